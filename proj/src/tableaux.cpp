#include "machflow/tableaux.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace machflow {

namespace {

constexpr double kTol = 1e-12;

std::vector<std::vector<double>> zeros(int n) {
    return std::vector<std::vector<double>>(n, std::vector<double>(n, 0.0));
}

double row_sum(const std::vector<double>& row, int upto) {
    double s = 0.0;
    for (int j = 0; j < upto; ++j) s += row[j];
    return s;
}

}  // namespace

void DoubleTableau::check_structure(double tol) const {
    auto fail = [&](const std::string& msg) { throw TableauError(name + ": " + msg); };
    if (s < 1) fail("stage count must be >= 1");
    auto check_dims = [&](const std::vector<std::vector<double>>& m, const char* label) {
        if ((int)m.size() != s) fail(std::string(label) + " must have s rows");
        for (const auto& row : m)
            if ((int)row.size() != s) fail(std::string(label) + " must have s columns");
    };
    check_dims(a_tilde, "a_tilde");
    check_dims(a, "a");
    if ((int)c_tilde.size() != s || (int)c.size() != s || (int)w_tilde.size() != s ||
        (int)w.size() != s)
        fail("abscissa/weight vectors must have length s");
    for (int i = 0; i < s; ++i) {
        for (int j = i; j < s; ++j)
            if (a_tilde[i][j] != 0.0)
                fail("explicit table not strictly lower triangular in row " + std::to_string(i + 1));
        for (int j = i + 1; j < s; ++j)
            if (a[i][j] != 0.0)
                fail("implicit table not lower triangular in row " + std::to_string(i + 1));
        if (std::fabs(c_tilde[i] - row_sum(a_tilde[i], i)) > tol)
            fail("explicit abscissa inconsistent with row sums in row " + std::to_string(i + 1));
        if (std::fabs(c[i] - row_sum(a[i], i + 1)) > tol)
            fail("implicit abscissa inconsistent with row sums in row " + std::to_string(i + 1));
    }
}

namespace {

DoubleTableau make(const std::string& name, int s, std::vector<std::vector<double>> at,
                   std::vector<std::vector<double>> a, std::vector<double> ct,
                   std::vector<double> c, std::vector<double> wt, std::vector<double> w) {
    DoubleTableau t;
    t.name = name;
    t.s = s;
    t.a_tilde = std::move(at);
    t.a = std::move(a);
    t.c_tilde = std::move(ct);
    t.c = std::move(c);
    t.w_tilde = std::move(wt);
    t.w = std::move(w);
    t.check_structure();
    return t;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

}  // namespace

DoubleTableau pr_tableau(double gamma_p) {
    const double gp = gamma_p;
    const double dp = 1.0 - 1.0 / (2.0 * gp);
    return make("PR(2,2,2)", 2, {{0, 0}, {1, 0}}, {{1 - gp, 0}, {gp - dp, dp}}, {0, 1},
                {1 - gp, gp}, {0.5, 0.5}, {0.5, 0.5});
}

DoubleTableau builtin_tableau(const std::string& name) {
    const std::string key = lower(name);
    if (key == "euler(1,1,1)" || key == "euler") {
        return make("Euler(1,1,1)", 2, {{0, 0}, {1, 0}}, {{0, 0}, {0, 1}}, {0, 1}, {0, 1}, {1, 0},
                    {0, 1});
    }
    if (key == "jin(2,2,2)" || key == "jin") {
        return make("JIN(2,2,2)", 2, {{0, 0}, {1, 0}}, {{-1, 0}, {1, 1}}, {0, 1}, {-1, 2},
                    {0.5, 0.5}, {0.5, 0.5});
    }
    if (key == "pr(2,2,2)" || key == "pr") {
        return pr_tableau(1.0 / std::sqrt(2.0));
    }
    if (key == "ars(2,2,2)" || key == "ars") {
        const double ga = 1.0 - std::sqrt(2.0) / 2.0;
        const double da = 1.0 - 1.0 / (2.0 * ga);
        return make("ARS(2,2,2)", 3, {{0, 0, 0}, {ga, 0, 0}, {da, 1 - da, 0}},
                    {{0, 0, 0}, {0, ga, 0}, {0, 1 - ga, ga}}, {0, ga, 1}, {0, ga, 1},
                    {da, 1 - da, 0}, {0, 1 - ga, ga});
    }
    if (key == "cn(2,2,2)" || key == "cn" || key == "rk2cn(2,2,2)" || key == "rk2cn") {
        return make("CN(2,2,2)", 3, {{0, 0, 0}, {0.5, 0, 0}, {0, 1, 0}},
                    {{0, 0, 0}, {0, 0.5, 0}, {0.5, 0, 0.5}}, {0, 0.5, 1}, {0, 0.5, 1}, {0, 1, 0},
                    {0.5, 0, 0.5});
    }
    std::string valid;
    for (const auto& n : builtin_tableau_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw TableauError("unknown tableau '" + name + "' (valid: " + valid + ")");
}

std::vector<std::string> builtin_tableau_names() {
    return {"Euler(1,1,1)", "JIN(2,2,2)", "PR(2,2,2)", "ARS(2,2,2)", "CN(2,2,2)"};
}

TableauReport validate_tableau(const DoubleTableau& t, double tol) {
    t.check_structure(tol);
    TableauReport rep;

    const int s = t.s;
    auto dot = [&](const std::vector<double>& x, const std::vector<double>& y) {
        double r = 0.0;
        for (int i = 0; i < s; ++i) r += x[i] * y[i];
        return r;
    };
    const double sum_wt = row_sum(t.w_tilde, s), sum_w = row_sum(t.w, s);
    const bool first = std::fabs(sum_wt - 1.0) <= tol && std::fabs(sum_w - 1.0) <= tol;
    const bool second = first && std::fabs(dot(t.w_tilde, t.c_tilde) - 0.5) <= tol &&
                        std::fabs(dot(t.w, t.c) - 0.5) <= tol &&
                        std::fabs(dot(t.w_tilde, t.c) - 0.5) <= tol &&
                        std::fabs(dot(t.w, t.c_tilde) - 0.5) <= tol;
    rep.order_achieved = second ? 2 : (first ? 1 : 0);

    rep.is_gsa = true;
    for (int j = 0; j < s; ++j) {
        if (std::fabs(t.a_tilde[s - 1][j] - t.w_tilde[j]) > tol ||
            std::fabs(t.a[s - 1][j] - t.w[j]) > tol) {
            rep.is_gsa = false;
            break;
        }
    }

    // Strip leading stages that are empty in the implicit table (zero row,
    // column, weight and abscissa); they are padding, not coupling.
    auto implicit_trivial = [&](int i) {
        if (std::fabs(t.c[i]) > tol || std::fabs(t.w[i]) > tol) return false;
        for (int j = 0; j < s; ++j)
            if (std::fabs(t.a[i][j]) > tol || std::fabs(t.a[j][i]) > tol) return false;
        return true;
    };
    int strip = 0;
    while (strip < s && implicit_trivial(strip)) ++strip;

    auto diag_nonzero = [&](int from) {
        for (int i = from; i < s; ++i)
            if (std::fabs(t.a[i][i]) <= tol) return false;
        return true;
    };
    if (strip >= 1 && s - strip == 1) {
        rep.kind = diag_nonzero(s - 1) ? TableauKind::TypeA : TableauKind::Neither;
    } else if (diag_nonzero(0)) {
        rep.kind = TableauKind::TypeA;
    } else {
        bool first_row_zero = true;
        for (int j = 0; j < s; ++j)
            if (std::fabs(t.a[0][j]) > tol) first_row_zero = false;
        if (s >= 2 && first_row_zero && diag_nonzero(1))
            rep.kind = TableauKind::TypeCK;
        else
            rep.kind = TableauKind::Neither;
    }
    return rep;
}

StabilityCoeffs stability_coeffs(const DoubleTableau& t) {
    t.check_structure();
    // Zero-pad to three stages; the appendix shorthands index stages 1..3
    // and padding with empty rows/weights leaves every sum unchanged.
    const int n = 3;
    auto At = zeros(n), A = zeros(n);
    std::vector<double> ct(n, 0.0), c(n, 0.0), wt(n, 0.0), w(n, 0.0);
    for (int i = 0; i < std::min(t.s, n); ++i) {
        ct[i] = t.c_tilde[i];
        c[i] = t.c[i];
        wt[i] = t.w_tilde[i];
        w[i] = t.w[i];
        for (int j = 0; j < std::min(t.s, n); ++j) {
            At[i][j] = t.a_tilde[i][j];
            A[i][j] = t.a[i][j];
        }
    }
    if (t.s > n) throw TableauError(t.name + ": stability shorthands support at most 3 stages");

    // 1-based accessors to keep the formulas close to their printed form.
    auto at_ = [&](int i, int j) { return At[i - 1][j - 1]; };
    auto a_ = [&](int i, int j) { return A[i - 1][j - 1]; };
    auto ct_ = [&](int i) { return ct[i - 1]; };
    auto c_ = [&](int i) { return c[i - 1]; };
    auto wt_ = [&](int i) { return wt[i - 1]; };
    auto w_ = [&](int i) { return w[i - 1]; };

    StabilityCoeffs out;

    // First-order residual coefficients, written as the order-condition sums
    // so they apply to any stage count.
    double wtct = 0, wc = 0, wtc = 0, wct = 0;
    for (int i = 1; i <= n; ++i) {
        wtct += wt_(i) * ct_(i);
        wc += w_(i) * c_(i);
        wtc += wt_(i) * c_(i);
        wct += w_(i) * ct_(i);
    }
    out.b2 = {wtct - 0.5, wtc + wct - 1.0, wc - 0.5};

    const double sum_aii2 = a_(1, 1) + a_(2, 2);
    const double sum_aii3 = a_(1, 1) + a_(2, 2) + a_(3, 3);

    double s31 = 0.0;  // sum_j (at_{3j} c_j + a_{3j} ct_j)
    for (int j = 1; j <= 3; ++j) s31 += at_(3, j) * c_(j) + a_(3, j) * ct_(j);

    out.b3[0] = 0.5 - (wt_(2) * ct_(2) * sum_aii2 + wt_(3) * s31 + w_(3) * ct_(2) * at_(3, 2));
    out.b3[1] = 1.0 / 6.0 - wt_(3) * ct_(2) * at_(3, 2);
    {
        double acc = 0.0;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= i; ++j) acc += wt_(i) * a_(i, j) * c_(j);
        out.b3[2] = 0.5 - (acc + w_(2) * ct_(2) * sum_aii2 + w_(3) * s31);
    }
    {
        double acc = 0.0;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= i; ++j) acc += w_(i) * a_(i, j) * c_(j);
        out.b3[3] = 1.0 / 6.0 - acc;
    }

    {
        double t1 = wt_(2) * ct_(2) * (a_(1, 1) * sum_aii2 + a_(2, 2) * a_(2, 2));
        double inner = 0.0;
        for (int j = 1; j <= 2; ++j) {
            double cj = 0.0;
            for (int i = 1; i <= j; ++i) cj += c_(i) * a_(j, i);
            inner += at_(3, j) * cj;
        }
        double t2 = wt_(3) * (inner + a_(3, 2) * ct_(2) * sum_aii2 +
                              a_(3, 3) * (at_(3, 1) * c_(1) + at_(3, 2) * c_(2)) +
                              a_(3, 2) * ct_(2) + a_(3, 3) * ct_(3));
        double t3 = w_(3) * at_(3, 2) * ct_(2) * sum_aii3;
        out.b4[0] = t1 + t2 + t3 - 0.25;
    }
    out.b4[1] = wt_(3) * at_(3, 2) * at_(2, 1) * sum_aii3 - 1.0 / 6.0;
    {
        auto ac = [&](int j) {  // sum_i a_{ji} c_i
            double r = 0.0;
            for (int i = 1; i <= j; ++i) r += a_(j, i) * c_(i);
            return r;
        };
        double t1 = 0.0;
        for (int k = 1; k <= 3; ++k)
            for (int j = 1; j <= k; ++j) t1 += wt_(k) * a_(k, j) * ac(j);
        double t2 = 0.0;
        for (int k = 2; k <= 3; ++k)
            for (int j = 1; j <= k - 1; ++j) t2 += w_(k) * at_(k, j) * ac(j);
        double t3 = 0.0;
        for (int k = 2; k <= 3; ++k) t3 += w_(k) * at_(2, 1) * a_(k, 2) * sum_aii2;
        double t4 = w_(3) * a_(3, 3) *
                    ((at_(3, 1) * c_(1) + a_(3, 2) * ct_(2)) + (at_(3, 2) * c_(2) + a_(3, 3) * ct_(3)));
        out.b4[2] = t1 + t2 + t3 + t4 - 1.0 / 6.0;

        double t5 = 0.0;
        for (int k = 1; k <= 3; ++k)
            for (int j = 1; j <= k; ++j) t5 += w_(k) * a_(k, j) * ac(j);
        out.b4[3] = t5 - 1.0 / 24.0;
    }
    return out;
}

TableauReport predict_stability(const DoubleTableau& t,
                                const std::array<double, 2>& background_velocity,
                                const std::array<double, 2>& dx) {
    if (!(dx[0] > 0.0 && dx[1] > 0.0)) throw TableauError("predict_stability: dx must be > 0");
    TableauReport rep = validate_tableau(t);
    const StabilityCoeffs b = stability_coeffs(t);
    rep.b2 = b.b2;
    rep.b3 = b.b3;
    rep.b4 = b.b4;
    rep.semi_discrete_stable =
        b.b4[0] < 0.0 && b.b4[1] < 0.0 && b.b4[2] < 0.0 && b.b4[3] < 0.0;
    rep.fully_discrete_first_order_stable = b.b2[0] < 0.0 && b.b2[2] > 0.0;
    const double u1 = std::fabs(background_velocity[0]);
    const double u2 = std::fabs(background_velocity[1]);
    const double norm2 = u1 * u1 + u2 * u2;
    if (rep.fully_discrete_first_order_stable && norm2 > 0.0) {
        rep.cfl_constant = -b.b2[0] * std::min(u1, u2) / norm2 * std::min(dx[0], dx[1]);
    }
    return rep;
}

TableauReport analyze_tableau(const DoubleTableau& t,
                              const std::array<double, 2>& background_velocity,
                              const std::array<double, 2>& dx) {
    return predict_stability(t, background_velocity, dx);
}

namespace {

bool is_label(const std::string& tok) {
    static const char* labels[] = {"A_TILDE", "A", "C_TILDE", "C", "W_TILDE", "W"};
    for (auto* l : labels)
        if (tok == l) return true;
    return false;
}

}  // namespace

DoubleTableau parse_tableau(std::istream& in, const std::string& name) {
    // Gather non-comment lines, splitting labels from numeric rows.
    std::vector<std::pair<std::string, std::vector<std::vector<double>>>> blocks;
    std::string line;
    while (std::getline(in, line)) {
        const auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (is_label(tok)) {
            std::string extra;
            if (ls >> extra) throw TableauError(name + ": trailing tokens after label " + tok);
            blocks.push_back({tok, {}});
            continue;
        }
        if (blocks.empty()) throw TableauError(name + ": numeric data before any block label");
        std::vector<double> row;
        std::istringstream row_in(line);
        double v;
        while (row_in >> v) row.push_back(v);
        if (!row_in.eof()) {
            row_in.clear();
            std::string bad;
            row_in >> bad;
            throw TableauError(name + ": bad token '" + bad + "' in block " + blocks.back().first);
        }
        blocks.back().second.push_back(std::move(row));
    }
    const char* expected[] = {"A_TILDE", "A", "C_TILDE", "C", "W_TILDE", "W"};
    if (blocks.size() != 6) throw TableauError(name + ": expected 6 labeled blocks");
    for (int k = 0; k < 6; ++k)
        if (blocks[k].first != expected[k])
            throw TableauError(name + ": block " + std::to_string(k + 1) + " must be " +
                               expected[k] + ", got " + blocks[k].first);

    const int s = (int)blocks[0].second.size();
    if (s < 1) throw TableauError(name + ": A_TILDE block is empty");
    auto matrix = [&](int k) {
        const auto& rows = blocks[k].second;
        if ((int)rows.size() != s)
            throw TableauError(name + ": block " + expected[k] + " must have " +
                               std::to_string(s) + " rows");
        for (const auto& r : rows)
            if ((int)r.size() != s)
                throw TableauError(name + ": block " + expected[k] + " must have " +
                                   std::to_string(s) + " columns");
        return rows;
    };
    auto vector = [&](int k) {
        const auto& rows = blocks[k].second;
        if (rows.size() != 1 || (int)rows[0].size() != s)
            throw TableauError(name + ": block " + expected[k] + " must be one row of " +
                               std::to_string(s) + " values");
        return rows[0];
    };
    DoubleTableau t;
    t.name = name;
    t.s = s;
    t.a_tilde = matrix(0);
    t.a = matrix(1);
    t.c_tilde = vector(2);
    t.c = vector(3);
    t.w_tilde = vector(4);
    t.w = vector(5);
    t.check_structure();
    return t;
}

DoubleTableau load_tableau_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableauError("cannot open tableau file: " + path);
    return parse_tableau(in, path);
}

const char* to_string(TableauKind k) {
    switch (k) {
        case TableauKind::TypeA: return "type-A";
        case TableauKind::TypeCK: return "type-CK";
        default: return "neither";
    }
}

}  // namespace machflow
