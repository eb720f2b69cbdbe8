#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tw/applications.hpp"
#include "tw/connection.hpp"

namespace tw {

/** Malformed or inconsistent input, as opposed to a structure that fails verification. */
class InputError : public Error {
public:
    using Error::Error;
};

struct BundleBlock {
    std::vector<std::string> names;
    std::vector<int> degrees;
    /** classes[i][x]: value of p_i on the homology basis element x. */
    std::vector<std::vector<Q>> classes;
};

/**
 * A model file: a homology basis with optional coproduct, pairing, CDGA and bundle blocks.
 * Rationals are strings "p/q" or JSON integers; unknown fields are rejected.
 */
struct ModelFile {
    std::string kind = "manifold";
    std::string name;
    GradedSpace space;
    /** Name of the generator of T(H[-1]) for each basis element, "" when not given. */
    std::vector<std::string> generators;
    std::map<int, GradedMap> coproduct;
    std::optional<Matrix> pairing;
    std::optional<CDGAModel> cdga;
    std::optional<BundleBlock> bundle;
};

Q parse_rational(const nlohmann::json& v, const std::string& field);
ModelFile parse_model(const nlohmann::json& j);
ModelFile parse_model_file(const std::string& path);
nlohmann::json to_json(const ModelFile& m);

std::optional<FiniteCoalgebra> coalgebra_of(const ModelFile& m);
/** From the coproduct block when present, otherwise through the power series connection. */
ManifoldModel manifold_of(const ModelFile& m, int max_length);
BundleModel bundle_of(const ModelFile& m, int max_length);

/**
 * Runs one subcommand (verify, connection, path-betti, loop-betti, loop-product, bundle-betti).
 * Returns 0 on success, 1 when a verification fails, 2 on input errors.
 */
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tw
