// Command-line front end: load a surface, specify laminations, compute
// traces and duality images, expand products, run the verification bundle.
#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qdual/classical.hpp"
#include "qdual/duality.hpp"
#include "qdual/render.hpp"

using namespace qdual;

namespace {

// Half-integer coordinate lists: "0,1/2,-3/2" -> doubled integers.
std::vector<Int> parse_coords(const std::string& text, std::size_t n) {
    std::vector<Int> mu;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        std::size_t slash = tok.find('/');
        try {
            if (slash == std::string::npos) {
                mu.push_back(2 * std::stoll(tok));
            } else {
                if (tok.substr(slash + 1) != "2") throw ParseError("");
                mu.push_back(std::stoll(tok.substr(0, slash)));
            }
        } catch (const std::exception&) {
            throw ParseError("bad coordinate token \"" + tok + "\" (expected integer or p/2)");
        }
    }
    if (mu.size() != n) {
        std::ostringstream os;
        os << "expected " << n << " coordinates, got " << mu.size();
        throw ParseError(os.str());
    }
    return mu;
}

// Curve words "2L,3R" with 1-indexed edges.
std::vector<CurveStep> parse_curve(const std::string& text) {
    std::vector<CurveStep> steps;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) throw ParseError("empty curve token");
        char dir = tok.back();
        if (dir != 'L' && dir != 'R')
            throw ParseError("bad curve token \"" + tok + "\" (expected e.g. 2L)");
        try {
            long long e = std::stoll(tok.substr(0, tok.size() - 1));
            if (e < 1) throw ParseError("");
            steps.push_back({static_cast<std::size_t>(e - 1), dir == 'L' ? Turn::Left : Turn::Right});
        } catch (const std::exception&) {
            throw ParseError("bad curve token \"" + tok + "\"");
        }
    }
    return steps;
}

std::string coords_string(const std::vector<Int>& mu) {
    std::ostringstream os;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (i) os << ",";
        if (mu[i] % 2 == 0)
            os << mu[i] / 2;
        else
            os << mu[i] << "/2";
    }
    return os.str();
}

struct Options {
    std::string surface;
    std::string coords;
    std::vector<std::string> curves;
    std::vector<Int> weights;
    std::string l1, l2;
    Int root = 3;
    std::string format = "text";
    int threads = 1;
    bool classical = false;
    bool timing = false;
};

IntegralLamination lamination_from_options(const IdealTriangulation& T, const Options& opt) {
    if (!opt.coords.empty()) {
        return from_coords_doubled(T, parse_coords(opt.coords, T.num_edges()));
    }
    if (!opt.curves.empty()) {
        if (opt.weights.size() != opt.curves.size())
            throw ParseError("each --curve needs a matching --weight");
        std::vector<std::pair<CurveWord, Int>> cs;
        for (std::size_t i = 0; i < opt.curves.size(); ++i)
            cs.push_back({CurveWord(T, parse_curve(opt.curves[i])), opt.weights[i]});
        return canonical_decompose(T, cs);
    }
    throw ParseError("specify a lamination with --coords or --curve/--weight");
}

void emit(const QLaurent& f, const std::string& format) {
    if (format == "text")
        std::cout << render_text(f) << "\n";
    else if (format == "latex")
        std::cout << render_latex(f) << "\n";
    else if (format == "json")
        std::cout << render_json(f) << "\n";
    else
        throw ParseError("unsupported format \"" + format + "\" for this command");
}

int run(const Options& opt, const std::string& command) {
    auto t0 = std::chrono::steady_clock::now();
    IdealTriangulation T = IdealTriangulation::load_json(opt.surface);
    DualityEngine eng(T, opt.threads);

    if (command == "trace") {
        IntegralLamination l = lamination_from_options(T, opt);
        QLaurent f = eng.i_omega(l);
        if (opt.classical) {
            emit(f.classical_limit(), opt.format);
        } else {
            emit(f, opt.format);
        }
    } else if (command == "dual") {
        IntegralLamination l = lamination_from_options(T, opt);
        emit(eng.i_hat_q(l), opt.format);
    } else if (command == "product") {
        if (opt.l1.empty() || opt.l2.empty()) throw ParseError("product needs --l1 and --l2");
        IntegralLamination a = from_coords_doubled(T, parse_coords(opt.l1, T.num_edges()));
        IntegralLamination b = from_coords_doubled(T, parse_coords(opt.l2, T.num_edges()));
        StructureConstantTable table = eng.product_expand(a, b);
        if (opt.format == "text") {
            for (const auto& [l, c] : table.rows)
                std::cout << coords_string(l.mu()) << " : " << render_scalar_text(c, "q") << "\n";
        } else if (opt.format == "csv") {
            std::cout << "coords,coefficient\n";
            for (const auto& [l, c] : table.rows)
                std::cout << "\"" << coords_string(l.mu()) << "\",\"" << render_scalar_text(c, "q")
                          << "\"\n";
        } else if (opt.format == "json") {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& [l, c] : table.rows) {
                nlohmann::json row;
                row["mu"] = l.mu();
                nlohmann::json coef = nlohmann::json::array();
                for (const auto& [e, k] : c.terms()) coef.push_back({e, k});
                row["coefficient"] = coef;
                rows.push_back(row);
            }
            std::cout << rows.dump() << "\n";
        } else {
            throw ParseError("unsupported format for product");
        }
    } else if (command == "verify") {
        IntegralLamination l = lamination_from_options(T, opt);
        VerifyReport rep = eng.verify_bundle(l);
        auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (opt.format == "json") {
            nlohmann::json j;
            j["classical_limit"] = rep.classical_ok;
            j["highest_term"] = rep.highest_ok;
            j["q_coefficients"] = rep.qform_ok;
            j["star_invariance"] = rep.star_ok;
            j["positive_coefficients_observed"] = rep.positive_observed;
            j["highest"] = rep.highest_term;
            if (opt.timing) j["seconds"] = dt;
            std::cout << j.dump() << "\n";
        } else {
            auto line = [](const char* name, bool ok) {
                std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
            };
            line("classical-limit", rep.classical_ok);
            line("highest-term", rep.highest_ok);
            line("q-coefficients", rep.qform_ok);
            line("star-invariance", rep.star_ok);
            std::cout << "note positivity " << (rep.positive_observed ? "observed" : "violated")
                      << " (reported, not asserted)\n";
            std::cout << "highest term: " << rep.highest_term << "\n";
            if (opt.timing) std::cout << "seconds: " << dt << "\n";
        }
        if (!rep.all_ok()) return 4;
    } else if (command == "frobenius") {
        IntegralLamination l = lamination_from_options(T, opt);
        bool ok = eng.frobenius_check(l, opt.root);
        std::cout << (ok ? "true" : "false") << "\n";
        if (!ok) return 4;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact duality-map engine for laminations on triangulated punctured surfaces"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool lamination) {
        sub->add_option("--surface", opt.surface, "surface JSON file")->required();
        sub->add_option("--format", opt.format, "text, json, latex or csv");
        sub->add_option("--threads", opt.threads, "state-sum worker threads");
        if (lamination) {
            sub->add_option("--coords", opt.coords, "a-coordinates, e.g. 0,1/2,1/2");
            sub->add_option("--curve", opt.curves, "curve word, e.g. 2L,3R (repeatable)");
            sub->add_option("--weight", opt.weights, "weight for each --curve");
        }
    };

    CLI::App* trace = app.add_subcommand("trace", "print the square-root trace of a lamination");
    add_common(trace, true);
    trace->add_flag("--classical", opt.classical, "evaluate at w = 1");

    CLI::App* dual = app.add_subcommand("dual", "print the duality image in q-form");
    add_common(dual, true);

    CLI::App* product = app.add_subcommand("product", "expand a product in the duality basis");
    add_common(product, false);
    product->add_option("--l1", opt.l1, "first lamination coordinates")->required();
    product->add_option("--l2", opt.l2, "second lamination coordinates")->required();

    CLI::App* verify = app.add_subcommand("verify", "verification bundle for one lamination");
    add_common(verify, true);
    verify->add_flag("--timing", opt.timing, "include timing in the report");

    CLI::App* frob = app.add_subcommand("frobenius", "root-of-unity identity check");
    add_common(frob, true);
    frob->add_option("--root", opt.root, "odd root order N")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        return run(opt, app.get_subcommands()[0]->get_name());
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
}
