#include "tw/model_io.hpp"

#include <fstream>
#include <regex>
#include <set>

namespace tw {

using nlohmann::json;

namespace {

void only_fields(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw InputError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) throw InputError(where + ": unknown field '" + it.key() + "'");
    }
}

const json& required(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
    return j.at(key);
}

std::string get_string(const json& j, const char* key, const std::string& where) {
    const json& v = required(j, key, where);
    if (!v.is_string()) throw InputError(where + "." + key + ": expected a string");
    return v.get<std::string>();
}

int get_int(const json& j, const char* key, const std::string& where) {
    const json& v = required(j, key, where);
    if (!v.is_number_integer()) throw InputError(where + "." + key + ": expected an integer, got " + v.dump());
    return v.get<int>();
}

const json& get_array(const json& j, const char* key, const std::string& where) {
    const json& v = required(j, key, where);
    if (!v.is_array()) throw InputError(where + "." + key + ": expected an array");
    return v;
}

std::string at(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

int lookup(const GradedSpace& s, const std::string& name, const std::string& where) {
    if (!s.contains(name)) throw InputError(where + ": unknown basis element '" + name + "'");
    return s.index(name);
}

GradedSpace parse_basis(const json& arr, const std::string& where, const std::string& name,
                        std::vector<std::string>* generators) {
    std::vector<std::pair<std::string, int>> basis;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string w = at(where, i);
        if (generators)
            only_fields(arr[i], w, {"name", "degree", "generator"});
        else
            only_fields(arr[i], w, {"name", "degree"});
        const std::string n = get_string(arr[i], "name", w);
        if (!seen.insert(n).second) throw InputError(w + ": duplicate basis element '" + n + "'");
        basis.emplace_back(n, get_int(arr[i], "degree", w));
        if (generators) generators->push_back(arr[i].contains("generator") ? get_string(arr[i], "generator", w) : "");
    }
    return GradedSpace(name, basis);
}

/** [{coeff, element}] as a Vec of one-letter words. */
Vec parse_terms(const json& arr, const GradedSpace& s, const std::string& where) {
    if (!arr.is_array()) throw InputError(where + ": expected an array of terms");
    Vec v;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string w = at(where, i);
        only_fields(arr[i], w, {"coeff", "element"});
        v.add(Word{lookup(s, get_string(arr[i], "element", w), w + ".element")},
              parse_rational(required(arr[i], "coeff", w), w + ".coeff"));
    }
    return v;
}

json terms_json(const Vec& v, const GradedSpace& s) {
    json arr = json::array();
    for (const auto& [w, c] : v) arr.push_back({{"coeff", c.get_str()}, {"element", s.names.at(w.at(0))}});
    return arr;
}

CDGAModel parse_cdga(const json& j, const std::vector<std::string>& generator_of_class,
                     const GradedSpace& homology) {
    const std::string where = "cdga";
    only_fields(j, where, {"unit", "basis", "product", "differential", "representatives", "contraction"});
    CDGAModel m;
    m.space = parse_basis(get_array(j, "basis", where), where + ".basis", "A", nullptr);
    m.unit = lookup(m.space, get_string(j, "unit", where), where + ".unit");
    m.differential.assign(m.space.dim(), Vec{});
    if (j.contains("product")) {
        const json& arr = get_array(j, "product", where);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string w = at(where + ".product", i);
            only_fields(arr[i], w, {"left", "right", "terms"});
            const int a = lookup(m.space, get_string(arr[i], "left", w), w + ".left");
            const int b = lookup(m.space, get_string(arr[i], "right", w), w + ".right");
            m.product[{a, b}] = parse_terms(required(arr[i], "terms", w), m.space, w + ".terms");
        }
        // graded commutativity fills the other order when it is not listed
        std::map<std::pair<int, int>, Vec> extra;
        for (const auto& [ab, v] : m.product)
            if (!m.product.count({ab.second, ab.first}))
                extra[{ab.second, ab.first}] =
                    v * sign_of(static_cast<long long>(m.space.degrees[ab.first]) * m.space.degrees[ab.second]);
        m.product.insert(extra.begin(), extra.end());
    }
    if (j.contains("differential")) {
        const json& arr = get_array(j, "differential", where);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string w = at(where + ".differential", i);
            only_fields(arr[i], w, {"input", "terms"});
            m.differential[lookup(m.space, get_string(arr[i], "input", w), w + ".input")] =
                parse_terms(required(arr[i], "terms", w), m.space, w + ".terms");
        }
    }
    const json& reps = get_array(j, "representatives", where);
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const std::string w = at(where + ".representatives", i);
        only_fields(reps[i], w, {"class", "terms"});
        const std::string cls = get_string(reps[i], "class", w);
        const int h = lookup(homology, cls, w + ".class");
        m.class_names.push_back(cls);
        m.representatives.push_back(parse_terms(required(reps[i], "terms", w), m.space, w + ".terms"));
        if (m.representatives.back().empty()) throw InputError(w + ".terms: representative is zero");
        if (m.degree(m.representatives.back()) != homology.degrees[h])
            throw InputError(w + ": representative degree differs from the degree of '" + cls + "'");
        if (!generator_of_class[h].empty()) m.generator_names.push_back(generator_of_class[h]);
    }
    if (!m.generator_names.empty() && m.generator_names.size() != m.representatives.size())
        throw InputError("cdga.representatives: generator names must be given for every class or for none");
    if (j.contains("contraction")) {
        const json& arr = get_array(j, "contraction", where);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string w = at(where + ".contraction", i);
            only_fields(arr[i], w, {"exact", "primitive"});
            m.contraction.emplace_back(parse_terms(required(arr[i], "exact", w), m.space, w + ".exact"),
                                       parse_terms(required(arr[i], "primitive", w), m.space, w + ".primitive"));
        }
    }
    const std::string bad = m.validate();
    if (!bad.empty()) throw InputError("cdga: " + bad);
    return m;
}

}  // namespace

Q parse_rational(const json& v, const std::string& field) {
    static const std::regex pattern(R"(-?[0-9]+(/[0-9]+)?)");
    std::string s;
    if (v.is_number_integer()) {
        s = v.dump();
    } else if (v.is_string() && std::regex_match(v.get<std::string>(), pattern)) {
        s = v.get<std::string>();
    } else {
        throw InputError(field + ": expected an exact rational \"p/q\", got " + v.dump());
    }
    Q q(s);
    if (q.get_den() == 0) throw InputError(field + ": zero denominator");
    q.canonicalize();
    return q;
}

ModelFile parse_model(const json& j) {
    only_fields(j, "model", {"kind", "name", "basis", "coproduct", "pairing", "cdga", "bundle"});
    ModelFile m;
    if (j.contains("kind")) m.kind = get_string(j, "kind", "model");
    if (m.kind != "manifold" && m.kind != "bundle") throw InputError("model.kind: expected \"manifold\" or \"bundle\"");
    m.name = j.contains("name") ? get_string(j, "name", "model") : "model";
    m.space = parse_basis(get_array(j, "basis", "model"), "basis", m.name, &m.generators);

    if (j.contains("coproduct")) {
        const json& arr = get_array(j, "coproduct", "model");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string w = at("coproduct", i);
            only_fields(arr[i], w, {"arity", "input", "terms"});
            const int n = get_int(arr[i], "arity", w);
            if (n < 1) throw InputError(w + ".arity: must be at least 1");
            const int x = lookup(m.space, get_string(arr[i], "input", w), w + ".input");
            auto it = m.coproduct.find(n);
            if (it == m.coproduct.end())
                it = m.coproduct.emplace(n, GradedMap(m.space.degrees, m.space.degrees, 1, n, n - 2)).first;
            Vec v = it->second.apply(Word{x});
            const json& terms = get_array(arr[i], "terms", w);
            for (std::size_t t = 0; t < terms.size(); ++t) {
                const std::string tw_ = at(w + ".terms", t);
                only_fields(terms[t], tw_, {"coeff", "output"});
                const json& out = get_array(terms[t], "output", tw_);
                if (static_cast<int>(out.size()) != n) throw InputError(tw_ + ".output: expected " + std::to_string(n) + " factors");
                Word word;
                int d = 0;
                for (std::size_t k = 0; k < out.size(); ++k) {
                    if (!out[k].is_string()) throw InputError(tw_ + ".output: expected names");
                    word.push_back(lookup(m.space, out[k].get<std::string>(), tw_ + ".output"));
                    d += m.space.degrees[word.back()];
                }
                if (d != m.space.degrees[x] + n - 2)
                    throw InputError(tw_ + ": term has degree " + std::to_string(d) + ", expected " +
                                     std::to_string(m.space.degrees[x] + n - 2));
                v.add(word, parse_rational(required(terms[t], "coeff", tw_), tw_ + ".coeff"));
            }
            it->second.set({x}, v);
        }
    }
    if (j.contains("pairing")) {
        const json& arr = get_array(j, "pairing", "model");
        Matrix p(m.space.dim(), m.space.dim());
        std::vector<std::vector<bool>> given(m.space.dim(), std::vector<bool>(m.space.dim(), false));
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string w = at("pairing", i);
            only_fields(arr[i], w, {"left", "right", "value"});
            const int a = lookup(m.space, get_string(arr[i], "left", w), w + ".left");
            const int b = lookup(m.space, get_string(arr[i], "right", w), w + ".right");
            p(a, b) = parse_rational(required(arr[i], "value", w), w + ".value");
            given[a][b] = true;
        }
        for (int a = 0; a < m.space.dim(); ++a)
            for (int b = 0; b < m.space.dim(); ++b)
                if (given[a][b] && !given[b][a])
                    p(b, a) = p(a, b) * sign_of(static_cast<long long>(m.space.degrees[a]) * m.space.degrees[b]);
        m.pairing = p;
    }
    if (j.contains("cdga")) {
        std::vector<std::string> gens(m.generators.begin(), m.generators.end());
        m.cdga = parse_cdga(j.at("cdga"), gens, m.space);
    }
    if (j.contains("bundle")) {
        const json& b = j.at("bundle");
        only_fields(b, "bundle", {"group_generators", "characteristic_classes"});
        BundleBlock bb;
        const json& gens = get_array(b, "group_generators", "bundle");
        for (std::size_t i = 0; i < gens.size(); ++i) {
            const std::string w = at("bundle.group_generators", i);
            only_fields(gens[i], w, {"name", "degree"});
            bb.names.push_back(get_string(gens[i], "name", w));
            bb.degrees.push_back(get_int(gens[i], "degree", w));
            if (bb.degrees.back() <= 0 || bb.degrees.back() % 2 == 0)
                throw InputError(w + ".degree: group generators must have positive odd degree");
        }
        bb.classes.assign(bb.names.size(), std::vector<Q>(m.space.dim()));
        if (b.contains("characteristic_classes")) {
            const json& cls = get_array(b, "characteristic_classes", "bundle");
            for (std::size_t i = 0; i < cls.size(); ++i) {
                const std::string w = at("bundle.characteristic_classes", i);
                only_fields(cls[i], w, {"generator", "class"});
                const std::string g = get_string(cls[i], "generator", w);
                auto it = std::find(bb.names.begin(), bb.names.end(), g);
                if (it == bb.names.end()) throw InputError(w + ".generator: unknown group generator '" + g + "'");
                const Vec v = parse_terms(required(cls[i], "class", w), m.space, w + ".class");
                auto& row = bb.classes[it - bb.names.begin()];
                for (const auto& [x, c] : v) row[x.at(0)] += c;
            }
        }
        m.bundle = bb;
    }
    if (m.kind == "bundle" && !m.bundle) throw InputError("model: a bundle needs a 'bundle' block");
    if (m.coproduct.empty() && !m.cdga) throw InputError("model: needs a 'coproduct' or a 'cdga' block");
    return m;
}

ModelFile parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    return parse_model(j);
}

json to_json(const ModelFile& m) {
    json j;
    j["kind"] = m.kind;
    j["name"] = m.name;
    json basis = json::array();
    for (int i = 0; i < m.space.dim(); ++i) {
        json b = {{"name", m.space.names[i]}, {"degree", m.space.degrees[i]}};
        if (!m.generators[i].empty()) b["generator"] = m.generators[i];
        basis.push_back(b);
    }
    j["basis"] = basis;
    if (!m.coproduct.empty()) {
        json arr = json::array();
        for (const auto& [n, g] : m.coproduct)
            for (const auto& [in, v] : g.entries) {
                json terms = json::array();
                for (const auto& [w, c] : v) {
                    json out = json::array();
                    for (int x : w) out.push_back(m.space.names[x]);
                    terms.push_back({{"coeff", c.get_str()}, {"output", out}});
                }
                arr.push_back({{"arity", n}, {"input", m.space.names[in.at(0)]}, {"terms", terms}});
            }
        j["coproduct"] = arr;
    }
    if (m.pairing) {
        json arr = json::array();
        for (int a = 0; a < m.space.dim(); ++a)
            for (int b = 0; b < m.space.dim(); ++b)
                if ((*m.pairing)(a, b) != 0)
                    arr.push_back({{"left", m.space.names[a]}, {"right", m.space.names[b]}, {"value", (*m.pairing)(a, b).get_str()}});
        j["pairing"] = arr;
    }
    if (m.cdga) {
        const CDGAModel& c = *m.cdga;
        json cj;
        cj["unit"] = c.space.names[c.unit];
        json basis2 = json::array();
        for (int i = 0; i < c.space.dim(); ++i) basis2.push_back({{"name", c.space.names[i]}, {"degree", c.space.degrees[i]}});
        cj["basis"] = basis2;
        json prod = json::array();
        for (const auto& [ab, v] : c.product)
            prod.push_back({{"left", c.space.names[ab.first]}, {"right", c.space.names[ab.second]}, {"terms", terms_json(v, c.space)}});
        cj["product"] = prod;
        json diff = json::array();
        for (int i = 0; i < c.space.dim(); ++i)
            if (!c.differential[i].empty()) diff.push_back({{"input", c.space.names[i]}, {"terms", terms_json(c.differential[i], c.space)}});
        cj["differential"] = diff;
        json reps = json::array();
        for (std::size_t i = 0; i < c.representatives.size(); ++i)
            reps.push_back({{"class", c.class_names[i]}, {"terms", terms_json(c.representatives[i], c.space)}});
        cj["representatives"] = reps;
        if (!c.contraction.empty()) {
            json con = json::array();
            for (const auto& [y, hy] : c.contraction)
                con.push_back({{"exact", terms_json(y, c.space)}, {"primitive", terms_json(hy, c.space)}});
            cj["contraction"] = con;
        }
        j["cdga"] = cj;
    }
    if (m.bundle) {
        json gens = json::array(), cls = json::array();
        for (std::size_t i = 0; i < m.bundle->names.size(); ++i) {
            gens.push_back({{"name", m.bundle->names[i]}, {"degree", m.bundle->degrees[i]}});
            Vec v;
            for (int x = 0; x < m.space.dim(); ++x) v.add(Word{x}, m.bundle->classes[i][x]);
            if (!v.empty()) cls.push_back({{"generator", m.bundle->names[i]}, {"class", terms_json(v, m.space)}});
        }
        j["bundle"] = {{"group_generators", gens}, {"characteristic_classes", cls}};
    }
    return j;
}

std::optional<FiniteCoalgebra> coalgebra_of(const ModelFile& m) {
    if (m.coproduct.empty()) return std::nullopt;
    try {
        return FiniteCoalgebra(m.space, m.coproduct, StructureKind::cinf_coalgebra);
    } catch (const Error& e) {
        throw InputError(std::string("coproduct: ") + e.what());
    }
}

ManifoldModel manifold_of(const ModelFile& m, int max_length) {
    if (!m.pairing) throw InputError("model: a manifold needs a 'pairing' block");
    std::vector<std::string> gens;
    bool any = false, all = true;
    for (int i = 0; i < m.space.dim(); ++i)
        if (m.space.degrees[i] > 0) {
            gens.push_back(m.generators[i]);
            any = any || !m.generators[i].empty();
            all = all && !m.generators[i].empty();
        }
    if (any && !all) throw InputError("basis: generator names must be given for every positive-degree element or for none");
    if (!any) gens.clear();
    if (auto c = coalgebra_of(m)) {
        try {
            return manifold_from_coalgebra(m.name, *c, Pairing(m.space.degrees, *m.pairing), gens);
        } catch (const InputError&) {
            throw;
        } catch (const Error& e) {
            throw InputError(e.what());
        }
    }
    const CDGAModel& cd = *m.cdga;
    std::string unit;
    for (int i = 0; i < m.space.dim(); ++i)
        if (m.space.degrees[i] == 0) unit = m.space.names[i];
    // the extracted basis is the unit followed by the classes in representative order
    std::vector<int> order{m.space.index(unit)};
    for (const auto& n : cd.class_names) order.push_back(m.space.index(n));
    if (static_cast<int>(order.size()) != m.space.dim())
        throw InputError("cdga.representatives: every positive-degree basis element needs exactly one representative");
    Matrix p(m.space.dim(), m.space.dim());
    for (int a = 0; a < m.space.dim(); ++a)
        for (int b = 0; b < m.space.dim(); ++b) p(a, b) = (*m.pairing)(order[a], order[b]);
    return manifold_from_cdga(m.name, cd, max_length, p, unit);
}

BundleModel bundle_of(const ModelFile& m, int max_length) {
    if (!m.bundle) throw InputError("model: no 'bundle' block");
    BundleModel b;
    b.base = manifold_of(m, max_length);
    b.group_names = m.bundle->names;
    b.group_degrees = m.bundle->degrees;
    // classes are stored on the file basis; reorder to the base model's basis
    for (const auto& row : m.bundle->classes) {
        std::vector<Q> r(b.base.coalgebra.space.dim());
        for (int x = 0; x < m.space.dim(); ++x) r[b.base.coalgebra.space.index(m.space.names[x])] = row[x];
        b.classes.push_back(r);
    }
    return b;
}

}  // namespace tw
