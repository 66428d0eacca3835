#include "hclab/chevalley.hpp"
#include "hclab/workbench.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace {

struct Flags {
    std::optional<uint32_t> p;
    std::optional<int> n, k, m, max_degree, parabolic, to_n, to_k;
    std::optional<uint32_t> lambda, mu;
    std::string backend, subgroup, word;
    bool free_words = false;
    std::string out = "json";
    std::string cache_dir;
    std::string cache_policy = "use";
    unsigned jobs = 1;
};

void add_common(CLI::App* cmd, Flags& f) {
    cmd->add_option("--p", f.p, "prime modulus");
    cmd->add_option("--n", f.n, "rank / block parameter n");
    cmd->add_option("--k", f.k, "block parameter k");
    cmd->add_option("--m", f.m, "total word length / source rank");
    cmd->add_option("--max-degree", f.max_degree, "degree bound D");
    cmd->add_option("--backend", f.backend, "contraction backend: hecke-regular | invariants");
    cmd->add_option("--lambda", f.lambda, "scalar for the ds term (default: sweep all nonzero)");
    cmd->add_option("--mu", f.mu, "scalar for the sd term (default: sweep all nonzero)");
    cmd->add_option("--subgroup", f.subgroup,
                    "subgroup tag: trivial|borel|unipotent|parabolic|full|weyl");
    cmd->add_option("--parabolic", f.parabolic, "parabolic index i (with --subgroup parabolic)");
    cmd->add_option("--to-n", f.to_n, "target model n (invariants hom)");
    cmd->add_option("--to-k", f.to_k, "target model k (invariants hom)");
    cmd->add_option("--word", f.word, "comma-separated operation indices, leftmost first");
    cmd->add_flag("--free", f.free_words, "count free words (no adjacency constraints)");
    cmd->add_option("--out", f.out, "output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--cache-dir", f.cache_dir,
                    "cache directory (HCLAB_CACHE_DIR overrides this flag)");
    cmd->add_option("--cache", f.cache_policy, "cache policy: use | refresh | off")
        ->check(CLI::IsMember({"use", "refresh", "off"}));
    cmd->add_option("--jobs", f.jobs, "worker threads for degreewise work");
}

hclab::workbench::Request to_request(const std::string& command, const Flags& f) {
    hclab::workbench::Request r;
    r.command = command;
    auto put = [&](const char* key, const auto& opt) {
        if (opt) r.params[key] = std::to_string(*opt);
    };
    put("p", f.p);
    put("n", f.n);
    put("k", f.k);
    put("m", f.m);
    put("max-degree", f.max_degree);
    put("parabolic", f.parabolic);
    put("to-n", f.to_n);
    put("to-k", f.to_k);
    put("lambda", f.lambda);
    put("mu", f.mu);
    if (!f.backend.empty()) r.params["backend"] = f.backend;
    if (!f.subgroup.empty()) r.params["subgroup"] = f.subgroup;
    if (!f.word.empty()) r.params["word"] = f.word;
    r.format = f.out;
    r.cache_policy = f.cache_policy;
    r.cache_dir = f.cache_dir;
    if (const char* env = std::getenv("HCLAB_CACHE_DIR")) r.cache_dir = env;
    r.jobs = f.jobs;
    return r;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hclab: exact-arithmetic workbench for mod-p Hecke algebras, Steinberg\n"
                 "idempotents, invariant-theoretic summand models, Dyer-Lashof word\n"
                 "combinatorics, and chain-contraction certificates.\n\n"
                 "Enumeration guards: group order <= 1e7, Borel cosets <= 1e5, wreath\n"
                 "order <= 2^13 with m <= 3, word degree <= 64, adem length <= 6,\n"
                 "model rank n+k <= 4 with degree <= 30, contraction totals <= 5\n"
                 "(hecke-regular) / <= 4 (invariants), presentation rank <= 6."};
    app.require_subcommand(1);

    Flags f;
    std::string picked;
    auto wire = [&](CLI::App* parent, const std::string& name, const std::string& desc,
                    const std::string& command) {
        CLI::App* c = parent->add_subcommand(name, desc);
        add_common(c, f);
        c->callback([&picked, command]() { picked = command; });
        return c;
    };

    CLI::App* hecke = app.add_subcommand("hecke", "Hecke algebra checks");
    hecke->require_subcommand(1);
    wire(hecke, "verify", "verify the e(i) presentation and algebra dimension", "hecke.verify");
    wire(hecke, "identity", "verify the orthogonal-idempotent identity and corner invertibility",
         "hecke.identity");
    wire(hecke, "ds", "build the d/s elements and check their squares vanish", "hecke.ds");

    CLI::App* steinberg = app.add_subcommand("steinberg", "Steinberg idempotent checks");
    steinberg->require_subcommand(1);
    wire(steinberg, "check", "idempotency, p-integrality and the Hecke comparison",
         "steinberg.check");
    wire(steinberg, "chain", "e^St_k e^St_{k+1} = e^St_{k+1} = e^St_{k+1} e^St_k",
         "steinberg.chain");

    CLI::App* inv = app.add_subcommand("invariants", "p = 2 invariant-theoretic models");
    inv->require_subcommand(1);
    wire(inv, "hilbert", "Hilbert series of invariants or of a summand model",
         "invariants.hilbert");
    wire(inv, "hom", "truncated Steenrod-commuting Hom dimension between models",
         "invariants.hom");

    CLI::App* words = app.add_subcommand("words", "Dyer-Lashof word combinatorics");
    words->require_subcommand(1);
    CLI::App* wc = wire(words, "count", "word counts per degree (use --m for free words)",
                        "words.count");
    (void)wc;
    wire(words, "bottom", "bottom degree and multiplicity of the length-k summand",
         "words.bottom");
    wire(words, "adem", "straighten a p = 2 word to admissible form", "words.adem");

    CLI::App* contraction = app.add_subcommand("contraction", "chain contraction certificates");
    contraction->require_subcommand(1);
    wire(contraction, "certify", "certify d^2 = 0, s^2 = 0, homotopy invertibility, exactness",
         "contraction.certify");

    CLI::App* chev = app.add_subcommand("chevalley", "finite group counting checks");
    chev->require_subcommand(1);
    wire(chev, "epi", "count epimorphisms E_m ->> E_n (formula vs brute force)",
         "chevalley.epi");
    wire(chev, "transrep", "epi orbits vs transitive wreath representations",
         "chevalley.transrep");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    hclab::workbench::Request req = to_request(picked, f);
    if (req.command == "words.count" && f.free_words && f.m) {
        req.params.erase("n");
        req.params.erase("k");
    }
    try {
        hclab::workbench::Report rep = hclab::workbench::run(req);
        if (!rep.warning.empty()) std::cerr << "warning: " << rep.warning << "\n";
        if (rep.cache_hit)
            std::cerr << "cache hit: " << hclab::workbench::request_digest(req) << "\n";
        std::cout << rep.payload;
        return rep.exit_code;
    } catch (const hclab::chevalley::GuardError& e) {
        std::cerr << "{\"error\":\"guard\",\"detail\":\"" << e.what()
                  << "\",\"size_estimate\":" << e.size_estimate << "}\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "{\"error\":\"usage\",\"detail\":\"" << e.what() << "\"}\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "{\"error\":\"internal\",\"detail\":\"" << e.what() << "\"}\n";
        return 2;
    }
}
