#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hclab/chevalley.hpp"
#include "hclab/workbench.hpp"

#include <filesystem>
#include <fstream>

using namespace hclab::workbench;
namespace fs = std::filesystem;

namespace {

Request words_request() {
    Request r;
    r.command = "words.count";
    r.params = {{"p", "2"}, {"n", "1"}, {"k", "1"}, {"max-degree", "18"}};
    return r;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("hclab_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

} // namespace

TEST_CASE("reports are byte-identical across worker counts") {
    Request a;
    a.command = "contraction.certify";
    a.params = {{"p", "2"}, {"m", "2"}, {"max-degree", "16"}, {"backend", "invariants"}};
    a.jobs = 1;
    Request b = a;
    b.jobs = 4;
    CHECK(run(a).payload == run(b).payload);
    CHECK(request_digest(a) == request_digest(b)); // jobs are not part of the key
}

TEST_CASE("cache: roundtrip, refresh, off") {
    TempDir tmp;
    Request r = words_request();
    r.cache_dir = tmp.path.string();

    Report first = run(r);
    CHECK(!first.cache_hit);
    Report second = run(r);
    CHECK(second.cache_hit);
    CHECK(second.payload == first.payload);
    CHECK(fs::exists(tmp.path / (request_digest(r) + ".json")));

    r.cache_policy = "refresh";
    Report third = run(r);
    CHECK(!third.cache_hit);
    CHECK(third.payload == first.payload);

    Request off = words_request();
    off.cache_policy = "off";
    off.cache_dir = (tmp.path / "unused").string();
    run(off);
    CHECK(!fs::exists(tmp.path / "unused"));
}

TEST_CASE("corrupt cache entries are evicted and recomputed") {
    TempDir tmp;
    Request r = words_request();
    r.cache_dir = tmp.path.string();
    Report fresh = run(r);
    fs::path entry = tmp.path / (request_digest(r) + ".json");
    {
        std::ofstream out(entry);
        out << "{ not json";
    }
    Report again = run(r);
    CHECK(!again.cache_hit);
    CHECK(!again.warning.empty());
    CHECK(again.payload == fresh.payload);
    // the entry was rewritten and works again
    CHECK(run(r).cache_hit);
}

TEST_CASE("payload format: json series schema and csv mirror") {
    Request r = words_request();
    Report j = run(r);
    CHECK(j.payload.find("\"computation\"") != std::string::npos);
    CHECK(j.payload.find("\"series\"") != std::string::npos);
    r.format = "csv";
    Report c = run(r);
    CHECK(c.payload.rfind("degree,dimension\n", 0) == 0);
    CHECK(run(r).payload == c.payload);
}

TEST_CASE("verified commands exit 0; guard violations surface as GuardError") {
    Request ok;
    ok.command = "hecke.verify";
    ok.params = {{"p", "2"}, {"n", "3"}};
    CHECK(run(ok).exit_code == 0);

    Request guard;
    guard.command = "words.count";
    guard.params = {{"p", "2"}, {"n", "1"}, {"k", "1"}, {"max-degree", "100"}};
    CHECK_THROWS_AS(run(guard), hclab::chevalley::GuardError);

    Request usage;
    usage.command = "hecke.verify";
    usage.params = {{"p", "2"}}; // missing n
    CHECK_THROWS_AS(run(usage), std::invalid_argument);

    Request unknown;
    unknown.command = "nope";
    CHECK_THROWS_AS(run(unknown), std::invalid_argument);
}

TEST_CASE("digest covers command, parameters, format and version") {
    Request a = words_request();
    Request b = words_request();
    CHECK(request_digest(a) == request_digest(b));
    b.params["max-degree"] = "19";
    CHECK(request_digest(a) != request_digest(b));
    Request c = words_request();
    c.format = "csv";
    CHECK(request_digest(a) != request_digest(c));
}
