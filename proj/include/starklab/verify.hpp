#pragma once

#include <json.hpp>

#include <array>
#include <string>
#include <vector>

#include "starklab/dirichlet.hpp"
#include "starklab/lfun.hpp"
#include "starklab/multilin.hpp"
#include "starklab/numfld.hpp"

namespace starklab {

constexpr int kScenarioVersion = 1;

/// Process exit codes of a scenario run.
enum ExitCode : int {
    kExitOk = 0,
    kExitFail = 1,
    kExitDatum = 2,
    kExitUndecided = 3,
    kExitInput = 4,
    kExitCapacity = 5,
};

enum class Verdict { Pass, Fail, Undecided, Unsupported, Error };
std::string to_string(Verdict v);

struct FieldSpec {
    std::string type = "rational";  // rational | quad | multiquad | abelian
    std::vector<long> discs;
    long modulus = 0;
    std::vector<long> kernel_generators;
};

struct Scenario {
    int version = kScenarioVersion;
    std::string name;
    FieldSpec field;
    std::vector<std::string> S;  // "inf" or decimal primes
    std::vector<std::string> V;
    std::vector<long> T;
    std::vector<std::string> checks;
    int bits = 128;
    int order = 2;
    nlohmann::json params = nlohmann::json::object();
};

/// InputError on schema violations.
Scenario parse_scenario(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);
nlohmann::json scenario_to_json(const Scenario& s);

AbelianRealization realization_of(const FieldSpec& f);
/// Discriminant of the field when it is Q (1) or quadratic; 0 otherwise.
long quadratic_disc(const FieldSpec& f);
/// Finite primes of a place list.
std::vector<long> finite_places(const std::vector<std::string>& places);

struct DatumReport {
    bool places_complete = false, v_splits = false, torsion_free = false;
    bool rank_gap = false;  // |S| > |V| + 1
    std::string problem;
};
/// Place, splitting and torsion conditions; a violation is reported, not thrown.
DatumReport validate_datum(const Scenario& s);

struct CheckResult {
    std::string name;
    Verdict verdict = Verdict::Pass;
    double radius = 0;
    bool inside_hypotheses = true;
    std::string note;
    int error_code = 0;  // exit code carried by Error and Unsupported verdicts
    nlohmann::json witness = nlohmann::json::object();
};

struct Certificate {
    nlohmann::json scenario;
    DatumReport datum;
    std::vector<CheckResult> checks;
    int exit_code() const;
    nlohmann::json to_json() const;
    std::string summary() const;
};

Certificate run(const Scenario& s);

/// Whether sum a_i e_{chi_i} over (Z/2)^2 has 2-integral coefficients.
/// InputError for even entries; ConsistencyError if the answer disagrees
/// with prod a_i = 1 mod 4.
bool check_congruence_biquadratic(const std::array<long, 4>& a);

/// Sign of a square ball determinant; UndecidedError when it straddles 0.
int check_sign_criterion(const std::vector<std::vector<Ball>>& m);

/// The Rubin-Stark element for |V| = 1 over Q or a quadratic field, as a
/// degree-one wedge over the cover Z[G]^n -> O_{K,S,T}^x by a Z-basis.
struct RubinStarkData {
    AbelianRealization realization;
    SUnitLattice units;
    FreeCover cover;
    BallGR theta;
    WedgeElement eps;
    std::vector<Ball> coordinates;
};
RubinStarkData rubin_stark_rank_one(const Scenario& s);

/// Z[G]-presentation of a G-lattice from its action matrices.
Presentation lattice_presentation(const GLattice& l);
/// X_{K,S} (degree-zero part of Z[S_K]) as a G-lattice.
GLattice x_lattice(const FieldPlaces& pl, const GroupPtr& g);

}  // namespace starklab
