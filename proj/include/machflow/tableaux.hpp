// tableaux.hpp -- double Butcher tableaux for IMEX-RK schemes: storage,
// validation, classification, and the MPDE stability shorthands b2/b3/b4.
#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace machflow {

struct TableauError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Paired explicit/implicit Runge-Kutta coefficient tables.
// a_tilde is strictly lower triangular (explicit part), a is lower
// triangular (diagonally implicit part). Weights w_tilde/w and abscissae
// c_tilde/c have length s. Small schemes are stored in the padded
// representation used by the reference figures, e.g. the (1,1,1) pair is a
// 2-stage table whose first implicit stage is empty.
struct DoubleTableau {
    std::string name;
    int s = 0;
    std::vector<std::vector<double>> a_tilde;  // explicit
    std::vector<std::vector<double>> a;        // implicit (DIRK)
    std::vector<double> c_tilde, c;
    std::vector<double> w_tilde, w;

    // Throws TableauError on shape, triangularity, or row-sum consistency
    // violations (the message names the failing row).
    void check_structure(double tol = 1e-12) const;
};

enum class TableauKind { TypeA, TypeCK, Neither };

struct TableauReport {
    int order_achieved = 0;  // 0, 1 or 2
    bool is_gsa = false;
    TableauKind kind = TableauKind::Neither;
    std::array<double, 3> b2{};
    std::array<double, 4> b3{};
    std::array<double, 4> b4{};
    bool semi_discrete_stable = false;
    bool fully_discrete_first_order_stable = false;
    std::optional<double> cfl_constant;  // absent when the bound degenerates
};

struct StabilityCoeffs {
    std::array<double, 3> b2{};
    std::array<double, 4> b3{};
    std::array<double, 4> b4{};
};

// Registered schemes: Euler(1,1,1), JIN(2,2,2), PR(2,2,2), ARS(2,2,2),
// CN(2,2,2) (alias RK2CN(2,2,2)). Lookup is case-insensitive and also
// accepts the bare family name ("ars"). Unknown names throw TableauError
// listing the valid ones.
DoubleTableau builtin_tableau(const std::string& name);
std::vector<std::string> builtin_tableau_names();

// PR(2,2,2) with a caller-chosen gamma_p. The default used by
// builtin_tableau is 1/sqrt(2), which reproduces the classical
// Pareschi-Russo second-order pair.
DoubleTableau pr_tableau(double gamma_p);

// Order conditions (up to 2), GSA flag, and type classification.
// Classification strips leading stages that are empty in the implicit
// table; if a single implicit stage remains the scheme is the padded form
// of a one-stage method and is judged type-A by that stage alone.
TableauReport validate_tableau(const DoubleTableau& t, double tol = 1e-12);

// The twelve scalar shorthands of the modified-equation analysis, i.e. the
// truncation-residual coefficients of the scheme on the linear wave system.
// Tableaux with s < 3 are zero-padded to three stages first.
StabilityCoeffs stability_coeffs(const DoubleTableau& t);

// Evaluates the two stability predicates and, for a first-order-stable
// scheme with nonzero background velocity, the CFL-like timestep bound
//   dt <= -b2[0] * min(|u1|,|u2|) / |u|^2 * min(dx,dy).
TableauReport predict_stability(const DoubleTableau& t,
                                const std::array<double, 2>& background_velocity,
                                const std::array<double, 2>& dx);

// Full report: validation + coefficients + stability predicates.
TableauReport analyze_tableau(const DoubleTableau& t,
                              const std::array<double, 2>& background_velocity = {0.0, 0.0},
                              const std::array<double, 2>& dx = {1.0, 1.0});

// Plain-text tableau file: labeled blocks A_TILDE, A, C_TILDE, C, W_TILDE,
// W in that order, row-major whitespace-separated decimals, '#' comments.
// The stage count is inferred from the A_TILDE block.
DoubleTableau parse_tableau(std::istream& in, const std::string& name = "file");
DoubleTableau load_tableau_file(const std::string& path);

const char* to_string(TableauKind k);

}  // namespace machflow
