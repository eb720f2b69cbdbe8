#include <CLI11.hpp>

#include <algorithm>
#include <ostream>
#include <sstream>

#include "tw/model_io.hpp"
#include "tw/twisting.hpp"

namespace tw {

namespace {

using nlohmann::json;

struct Options {
    std::string file;
    int max_degree = 8;
    int max_length = 0;
    std::string action;
    bool json = false;
    bool untwisted = false;
    bool cohomology = false;
};

/** Length of the connection when a manifold comes from a CDGA block. */
int connection_length(const ModelFile& f, const Options& o) {
    if (o.max_length > 0) return o.max_length;
    int top = 0;
    for (int d : f.space.degrees) top = std::max(top, d);
    return std::max(4, top);
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
    return s;
}

void betti_table(std::ostream& out, const std::vector<int>& betti) {
    std::vector<int> degrees(betti.size());
    for (std::size_t k = 0; k < betti.size(); ++k) degrees[k] = static_cast<int>(k);
    out << "degree  " << join(degrees) << "\n";
    out << "betti   " << join(betti) << "\n";
}

json coords_json(const std::vector<Q>& v) {
    json a = json::array();
    for (const Q& q : v) a.push_back(q.get_str());
    return a;
}

json homology_json(const std::string& command, const std::string& model, const std::vector<int>& betti,
                   const HomologyResult& h, const ChainComplex& x) {
    json j;
    j["command"] = command;
    j["model"] = model;
    j["betti"] = betti;
    json per = json::object();
    for (int k = h.lo; k <= h.exact_through; ++k) {
        json reps = json::array();
        for (const auto& r : h.representatives.at(k)) {
            json terms = json::array();
            for (std::size_t i = 0; i < r.size(); ++i)
                if (r[i] != 0) terms.push_back({{"coeff", r[i].get_str()}, {"element", x.names.at(k)[i]}});
            reps.push_back(terms);
        }
        per[std::to_string(k)] = {{"dimension", x.dim(k)}, {"betti", h.betti.at(k)}, {"representatives", reps}};
    }
    j["degrees"] = per;
    return j;
}

ActionKind action_or(const Options& o, ActionKind fallback) {
    if (o.action.empty()) return fallback;
    try {
        return parse_action(o.action);
    } catch (const Error& e) {
        throw InputError(e.what());
    }
}

int verify(const Options& o, std::ostream& out) {
    const ModelFile f = parse_model_file(o.file);
    const ManifoldModel m = f.kind == "bundle" ? bundle_of(f, connection_length(f, o)).base : manifold_of(f, connection_length(f, o));
    const TruncationPolicy policy = window_policy(o.max_degree, o.max_length);
    std::vector<std::pair<std::string, std::string>> checks;
    if (f.cdga) {
        const PowerSeriesConnection psc =
            m.connection ? *m.connection : build_power_series_connection(*f.cdga, connection_length(f, o));
        std::string bad;
        if (!flatness_defect(psc, *f.cdga, psc.max_length).empty()) bad = "flatness defect is nonzero";
        for (const Vec& v : boundary_square(psc, psc.max_length))
            if (!v.empty()) bad = "d^2 is nonzero on the generators";
        checks.emplace_back("connection", bad);
    }
    checks.emplace_back("manifold", m.validate(policy));
    if (f.kind == "bundle") {
        const BundleModel b = bundle_of(f, connection_length(f, o));
        std::string bad;
        try {
            const auto mc = check_maurer_cartan(b.base.coalgebra, b.group(), b.twisting_cochain(), policy);
            if (!mc.pass) bad = mc.describe(b.base.coalgebra, b.group());
        } catch (const InputError&) {
            throw;
        } catch (const Error& e) {
            bad = e.what();
        }
        checks.emplace_back("bundle", bad);
    }
    bool ok = true;
    json j = json::array();
    for (const auto& [name, bad] : checks) {
        ok = ok && bad.empty();
        if (o.json)
            j.push_back({{"check", name}, {"ok", bad.empty()}, {"message", bad}});
        else
            out << "check " << name << ": " << (bad.empty() ? "ok" : "FAIL " + bad) << "\n";
    }
    if (o.json) out << json{{"command", "verify"}, {"model", f.name}, {"checks", j}, {"ok", ok}}.dump(2) << "\n";
    return ok ? 0 : 1;
}

int connection(const Options& o, std::ostream& out) {
    const ModelFile f = parse_model_file(o.file);
    if (!f.cdga) throw InputError(o.file + ": the connection needs a 'cdga' block");
    const int len = connection_length(f, o);
    const PowerSeriesConnection psc = build_power_series_connection(*f.cdga, len);
    const HopfAlgebra lie = psc.lie_model();
    const bool flat = flatness_defect(psc, *f.cdga, len).empty();
    if (o.json) {
        json gens = json::array();
        for (std::size_t i = 0; i < psc.generator_names.size(); ++i)
            gens.push_back({{"name", psc.generator_names[i]}, {"degree", psc.generator_degree[i]},
                            {"boundary", lie.format(psc.boundary[i])}});
        out << json{{"command", "connection"}, {"model", f.name}, {"max_length", len}, {"generators", gens},
                    {"omega", format_connection(psc.omega, psc, *f.cdga)}, {"flat", flat}}
                   .dump(2)
            << "\n";
    } else {
        out << "max-length " << len << "\n";
        for (std::size_t i = 0; i < psc.generator_names.size(); ++i)
            out << "d(" << psc.generator_names[i] << ") = " << lie.format(psc.boundary[i]) << "   degree "
                << psc.generator_degree[i] << "\n";
        out << "omega = " << format_connection(psc.omega, psc, *f.cdga) << "\n";
        out << "flatness: " << (flat ? "ok" : "FAIL") << "\n";
    }
    return flat ? 0 : 1;
}

int require_valid(const ManifoldModel& m, const Options& o, std::ostream& err) {
    const std::string bad = m.validate(window_policy(o.max_degree, o.max_length));
    if (bad.empty()) return 0;
    err << m.name << ": " << bad << "\n";
    return 1;
}

int homology_command(const std::string& command, const Options& o, std::ostream& out, std::ostream& err) {
    const ModelFile f = parse_model_file(o.file);
    const ManifoldModel m = manifold_of(f, connection_length(f, o));
    if (int rc = require_valid(m, o, err)) return rc;
    HomologyRun run = command == "path-betti"
                          ? path_space_model(m, o.max_degree, o.max_length)
                          : free_loop_model(m, o.max_degree, action_or(o, ActionKind::conjugation), o.untwisted, o.max_length);
    const std::vector<int> betti = run.homology.betti_vector();
    if (o.json)
        out << homology_json(command, f.name, betti, run.homology, run.complex).dump(2) << "\n";
    else
        betti_table(out, betti);
    return 0;
}

std::string class_name(int degree, int i) { return "z" + std::to_string(degree) + "." + std::to_string(i); }

std::string format_class(int degree, const std::vector<Q>& v) {
    Vec tmp;
    for (std::size_t i = 0; i < v.size(); ++i) tmp.add(Word{static_cast<int>(i)}, v[i]);
    if (tmp.empty()) return "0";
    std::string s;
    for (const auto& [w, c] : tmp) {
        const std::string name = class_name(degree, w[0]);
        if (!s.empty()) s += c < 0 ? " - " : " + ";
        else if (c < 0) s += "-";
        const Q a = abs(c);
        if (a != 1) s += format_rational(a) + "*";
        s += name;
    }
    return s;
}

int loop_product(const Options& o, std::ostream& out, std::ostream& err) {
    const ActionKind action = action_or(o, ActionKind::conjugation);
    if (action == ActionKind::left_mult) throw InputError("loop-product: --action left does not give a product");
    const ModelFile f = parse_model_file(o.file);
    const ManifoldModel m = manifold_of(f, connection_length(f, o));
    if (int rc = require_valid(m, o, err)) return rc;
    const LoopProduct lp = loop_product_table(m, o.max_degree, o.max_length, action);
    const auto defects = derivation_defects(lp.run.family, window_policy(o.max_degree, o.max_length));
    if (o.json) {
        json j = homology_json("loop-product", f.name, lp.run.homology.betti_vector(), lp.run.homology, lp.run.complex);
        json entries = json::array();
        for (const auto& e : lp.table.entries)
            entries.push_back({{"left", class_name(e.p, e.i)}, {"right", class_name(e.q, e.j)}, {"degree", e.degree},
                               {"value", coords_json(e.value)}});
        j["degree_shift"] = lp.table.shift;
        j["products"] = entries;
        j["derivation_defects"] = defects.size();
        out << j.dump(2) << "\n";
    } else {
        betti_table(out, lp.run.homology.betti_vector());
        out << "product degree shift " << lp.table.shift << "\n";
        for (const auto& e : lp.table.entries)
            out << class_name(e.p, e.i) << " * " << class_name(e.q, e.j) << " = " << format_class(e.degree, e.value) << "\n";
        out << "derivation: " << (defects.empty() ? "ok" : "FAIL " + std::to_string(defects.size()) + " defects") << "\n";
    }
    return defects.empty() ? 0 : 1;
}

int bundle_betti(const Options& o, std::ostream& out) {
    const ModelFile f = parse_model_file(o.file);
    const BundleModel b = bundle_of(f, connection_length(f, o));
    const BundleResult r = bundle_model(b, o.max_degree, o.cohomology ? BundleVariant::cohomology : BundleVariant::homology,
                                        action_or(o, ActionKind::left_mult));
    const bool ok = !o.cohomology || (r.dual_matches && r.dual_report.ok());
    if (o.json) {
        const HomologyResult& h = o.cohomology ? *r.cohomology : r.run.homology;
        const ChainComplex& x = o.cohomology ? *r.cochains : r.run.complex;
        json j = homology_json("bundle-betti", f.name, r.betti, h, x);
        if (o.cohomology) {
            j["dual_matches"] = r.dual_matches;
            j["algebra_relations"] = r.dual_report.ok();
        }
        out << j.dump(2) << "\n";
    } else {
        betti_table(out, r.betti);
        if (o.cohomology) {
            out << "dual: " << (r.dual_matches ? "ok" : "FAIL") << "\n";
            out << "algebra relations: " << (r.dual_report.ok() ? "ok" : "FAIL " + r.dual_report.error) << "\n";
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Twisted tensor products for loop and bundle homology", "twcli"};
    app.require_subcommand(1);
    Options o;
    auto add_common = [&o](CLI::App* sub, bool with_action) {
        sub->add_option("model", o.file, "model file (JSON)")->required();
        sub->add_option("--max-degree", o.max_degree, "degree through which results are exact")->check(CLI::Range(0, 64));
        sub->add_option("--max-length", o.max_length, "word length bound (0 picks one from the degree)")->check(CLI::Range(0, 64));
        if (with_action)
            sub->add_option("--action", o.action, "left, bracket or conjugation")
                ->check(CLI::IsMember({"left", "bracket", "conjugation"}));
        sub->add_flag("--json", o.json, "machine-readable output");
    };
    auto* verify_cmd = app.add_subcommand("verify", "run every checker on a model");
    add_common(verify_cmd, false);
    auto* connection_cmd = app.add_subcommand("connection", "power series connection of the CDGA block");
    add_common(connection_cmd, false);
    auto* path_cmd = app.add_subcommand("path-betti", "Betti numbers of the based path space");
    add_common(path_cmd, true);
    auto* loop_cmd = app.add_subcommand("loop-betti", "Betti numbers of the free loop space");
    add_common(loop_cmd, true);
    loop_cmd->add_flag("--untwisted", o.untwisted, "use the zero twisting cochain");
    auto* product_cmd = app.add_subcommand("loop-product", "loop product on homology");
    add_common(product_cmd, true);
    auto* bundle_cmd = app.add_subcommand("bundle-betti", "Betti numbers of a principal bundle");
    add_common(bundle_cmd, true);
    bundle_cmd->add_flag("--cohomology", o.cohomology, "use the dual cochain model");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (path_cmd->parsed() && !o.action.empty() && o.action != "left")
            throw InputError("path-betti: the path space uses --action left only");
        if (verify_cmd->parsed()) return verify(o, out);
        if (connection_cmd->parsed()) return connection(o, out);
        if (path_cmd->parsed()) return homology_command("path-betti", o, out, err);
        if (loop_cmd->parsed()) return homology_command("loop-betti", o, out, err);
        if (product_cmd->parsed()) return loop_product(o, out, err);
        return bundle_betti(o, out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tw
