#ifndef XXZ_SUITE_HPP
#define XXZ_SUITE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xxz/charges.hpp"
#include "xxz/lattice.hpp"
#include "xxz/params.hpp"
#include "xxz/quantum_algebra.hpp"
#include "xxz/report.hpp"

namespace xxz {

/// Configuration of the verification suite.  Defaults: N in 1..4, 20
/// parameter draws, 20 spectral samples per draw, relative tolerance 1e-10.
/// A fixed mu/m/zeta pins the parameter point instead of drawing; filters
/// select checks by substring.
struct SuiteConfig {
    int max_sites = 4;
    int draws = 20;
    int lambda_samples = 20;
    double tolerance = 1e-10;
    std::uint64_t seed = 12345;
    std::vector<std::string> check_filters;
    std::string format = "json"; // json | md

    std::optional<double> mu, m, zeta;
    std::optional<BoundaryCase> bcase;
    std::optional<Gradation> gradation;

    double mu_min = 0.1, mu_max = 1.4;
    double m_min = 0.1, m_max = 1.5;
    double zeta_min = -0.4, zeta_max = 0.4;
};

/// Deterministic generator (splitmix64) used for all suite sampling; the
/// stdlib distributions are avoided so that reports are bit-identical
/// across standard libraries.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    double uniform(double a, double b);
    /// Spectral-parameter sample with |Re| <= 1.5, |Im| <= 1.0.
    Complex spectral_sample();

private:
    std::uint64_t state_;
};

/// Per-entry RNG stream derived from (seed, check name, draw index).
std::uint64_t check_stream_seed(std::uint64_t seed, std::string_view check_name,
                                std::uint64_t draw);

/// Random parameter point honoring fixed values in the config; random draws
/// are resampled away from degenerate loci (sin mu ~ 0, mu ~ pi/2,
/// x(0) ~ 0).  Fully fixed points are taken verbatim.
ModelParams draw_params(DetRng& rng, const SuiteConfig& cfg, int sites,
                        Gradation g = Gradation::homogeneous);

using LambdaPairs = std::vector<std::pair<Complex, Complex>>;

// --- residual helpers ----------------------------------------------------
// Pure functions returning the normalized residual of one identity; used by
// the suite runner, the unit tests and the acceptance suite.

double ybe_symbolic_residual(const ModelParams& p, Gradation g);
double ybe_sampled_residual(const ModelParams& p, Gradation g, const LambdaPairs& pairs);
/// Exchange relation between the R-matrix and two Lax operators on
/// aux (x) aux (x) site.
double fundamental_exchange_residual(const ModelParams& p);
/// R equals P (sinh(lambda + i mu) I + sinh(lambda) h(U_bulk)) and
/// R(0) = sinh(i mu) P.
double r_blob_form_residual(const ModelParams& p);
/// Principal R built from explicit entries equals the diagonal gauge
/// transform of the homogeneous one.
double r_gauge_residual(const ModelParams& p);
/// Lax operator in the spin-1/2 representation equals the R-matrix.
double lax_fundamental_residual(const ModelParams& p);
/// L(-lambda) Lhat(lambda) is proportional to the identity.
double lax_hat_inverse_residual(const ModelParams& p, Complex lambda);
double reflection_symbolic_residual(const ModelParams& p, KForm form, Gradation g);
double reflection_sampled_residual(const ModelParams& p, KForm form, Gradation g,
                                   const LambdaPairs& pairs);
/// Blob-ansatz and explicit right boundary agree coefficient-wise, and
/// K(0) = x(0) I.
double k_right_forms_residual(const ModelParams& p);
/// Principal right boundary equals e^{lambda} times its explicit
/// normalized display form.
double k_right_principal_display_residual(const ModelParams& p);
/// Reflected-transposed constructor applied to the diagonal limit of the
/// right boundary reproduces the case II left boundary.
double k_left_dual_residual(const ModelParams& p);
/// Zero-center identity and the spectral scaling of the affine generators.
double eval_rep_consistency_residual(const ModelParams& p, Complex lambda);
/// Left- vs right-nested coproduct towers and the zero-center tower.
double coassociativity_residual(const ModelParams& p);
double monodromy_product_residual(const ModelParams& p, Complex lambda);
/// Leading coefficients of T and That against the coproduct towers.
double monodromy_asymptotics_residual(const ModelParams& p);
double doubled_reflection_residual(const ModelParams& p, Complex l1, Complex l2);
/// Inside-out doubled monodromy equals T * K * That assembled with full
/// products; for sites = 0 the doubled monodromy equals the right boundary.
double doubled_assembly_residual(const ModelParams& p);
/// V Tau V of the homogeneous build equals the principal build.
double doubled_gauge_residual(const ModelParams& p);
/// Transfer matrix equals its explicit block combination for the case.
double transfer_case_form_residual(const ModelParams& p, BoundaryCase c);
/// Principal transfer equals e^{lambda} times the homogeneous one.
double transfer_gauge_residual(const ModelParams& p, BoundaryCase c);
double closed_commutativity_residual(const ModelParams& p);
double open_commutativity_symbolic_residual(const ModelParams& p, BoundaryCase c);
double open_commutativity_sampled_residual(const ModelParams& p, BoundaryCase c, Complex l1,
                                           Complex l2);
/// Closed form vs coproduct recursion vs N = 1 generator, both charges.
double charge_routes_residual(const ModelParams& p);
/// Modified coproduct of the unsubtracted charge.
double charge_variant_residual(const ModelParams& p);
/// Asymptotically extracted charges against the towers.
double charge_extraction_residual(const ModelParams& p, Gradation g);
/// All four exchange relations between Q_which and the doubled-monodromy
/// blocks at one lambda.
double exchange_relations_residual(const ModelParams& p, int which, Complex lambda);
/// Same relation with a deliberately wrong coupling; must be large.
double exchange_relation_broken_x_residual(const ModelParams& p, Complex lambda, double x_shift);

struct SymmetryResidual {
    double vanishing = 0.0; // the commutator that must vanish
    double remainder = 0.0; // the non-vanishing commutator against its closed form
};
SymmetryResidual symmetry_residual(const ModelParams& p, BoundaryCase c, Complex lambda);

double blob_charge_commutation_residual(const ModelParams& p);
/// Informational: norm residual of [h(U_0), Q_2], generically nonzero.
double blob_charge_q2_residual(const ModelParams& p);
double hamiltonian_routes_residual(const ModelParams& p);
double hamiltonian_symmetry_residual(const ModelParams& p);
/// Cylinder braid-type quartic relation for the extracted leading matrix;
/// sign in {+1, -1} selects the inverse generator on the outer factors.
double braid_residual(const ModelParams& p, int sign);
/// Boundary intertwiner with the boundary matrix built at a shifted m on
/// one side only; must be large.
double boundary_intertwiner_broken_m_residual(const ModelParams& p, Complex lambda,
                                              double m_shift);

// --- grouped checks (one parameter set -> report entries) ---------------

std::vector<ReportEntry> check_exchange_relations(const ModelParams& p, Complex lambda,
                                                  double tol);
std::vector<ReportEntry> check_symmetry(const ModelParams& p, BoundaryCase c, double tol,
                                        const std::vector<Complex>& lambdas);
std::vector<ReportEntry> check_blob_charge_commutation(const ModelParams& p, double tol);
std::vector<ReportEntry> check_hamiltonian(const ModelParams& p, double tol);
std::vector<ReportEntry> check_braid_relation(const ModelParams& p, double tol);

/// Names of every check the suite can run, sorted; the unit tests diff this
/// against a frozen list.
std::vector<std::string> suite_manifest();

extern const char* const kSuiteVersion;

/// Run every check selected by the config and return the sorted,
/// deterministic report.  Construction errors inside a check become failed
/// entries carrying the error message; they do not abort the run.
VerificationReport run_suite(const SuiteConfig& cfg);

} // namespace xxz

#endif
