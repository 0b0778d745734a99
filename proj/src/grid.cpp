#include "machflow/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace machflow {

Grid2D::Grid2D(int nx_, int ny_, double x_lo_, double x_hi_, double y_lo_, double y_hi_,
               BcKind bc_)
    : nx(nx_), ny(ny_), x_lo(x_lo_), x_hi(x_hi_), y_lo(y_lo_), y_hi(y_hi_), bc(bc_) {
    if (nx < 4 || ny < 4)
        throw std::invalid_argument("Grid2D: need nx, ny >= 4 (two ghost layers)");
    if (x_hi <= x_lo || y_hi <= y_lo)
        throw std::invalid_argument("Grid2D: empty domain");
    dx = (x_hi - x_lo) / nx;
    dy = (y_hi - y_lo) / ny;
}

Field::Field(const Grid2D& g, double fill)
    : grid_(g), stride_(g.ny + 2 * ghost), v_((g.nx + 2 * ghost) * (g.ny + 2 * ghost), fill) {}

void Field::fill(double c) {
    for (auto& x : v_) x = c;
}

double Field::min_interior() const {
    double m = (*this)(0, 0);
    for (int i = 0; i < nx(); ++i)
        for (int j = 0; j < ny(); ++j) m = std::min(m, (*this)(i, j));
    return m;
}

double Field::max_abs_interior() const {
    double m = 0.0;
    for (int i = 0; i < nx(); ++i)
        for (int j = 0; j < ny(); ++j) m = std::max(m, std::fabs((*this)(i, j)));
    return m;
}

double Field::sum_interior() const {
    double s = 0.0;
    for (int i = 0; i < nx(); ++i)
        for (int j = 0; j < ny(); ++j) s += (*this)(i, j);
    return s;
}

double Field::mean_interior() const { return sum_interior() / (nx() * double(ny())); }

namespace {
int wrap(int i, int n) { return (i % n + n) % n; }
}  // namespace

void apply_bc(Field& f, Parity px, Parity py) {
    const int nx = f.nx(), ny = f.ny();
    const int g = Field::ghost;
    const BcKind bc = f.grid().bc;
    if (bc == BcKind::Periodic) {
        // x ghosts from wrapped interior columns (interior j only).
        for (int k = 1; k <= g; ++k)
            for (int j = 0; j < ny; ++j) {
                f(-k, j) = f(nx - k, j);
                f(nx - 1 + k, j) = f(k - 1, j);
            }
        // y ghosts over the full x extent including corners.
        for (int i = -g; i < nx + g; ++i)
            for (int k = 1; k <= g; ++k) {
                f(i, -k) = f(i, wrap(ny - k, ny));
                f(i, ny - 1 + k) = f(i, wrap(k - 1, ny));
            }
    } else {
        const double sx = (px == Parity::Odd) ? -1.0 : 1.0;
        const double sy = (py == Parity::Odd) ? -1.0 : 1.0;
        for (int k = 1; k <= g; ++k)
            for (int j = 0; j < ny; ++j) {
                f(-k, j) = sx * f(k - 1, j);
                f(nx - 1 + k, j) = sx * f(nx - k, j);
            }
        for (int i = -g; i < nx + g; ++i)
            for (int k = 1; k <= g; ++k) {
                f(i, -k) = sy * f(i, k - 1);
                f(i, ny - 1 + k) = sy * f(i, ny - k);
            }
    }
}

Field central_diff(const Field& f, Dir d) {
    Field out(f.grid(), 0.0);
    const int nx = f.nx(), ny = f.ny();
    if (d == Dir::X) {
        const double inv = 1.0 / (2.0 * f.grid().dx);
        for (int i = -1; i <= nx; ++i)
            for (int j = -1; j <= ny; ++j) out(i, j) = (f(i + 1, j) - f(i - 1, j)) * inv;
    } else {
        const double inv = 1.0 / (2.0 * f.grid().dy);
        for (int i = -1; i <= nx; ++i)
            for (int j = -1; j <= ny; ++j) out(i, j) = (f(i, j + 1) - f(i, j - 1)) * inv;
    }
    return out;
}

Field wide_laplacian(const Field& f) {
    Field gx = central_diff(f, Dir::X);
    Field gy = central_diff(f, Dir::Y);
    Field lxx = central_diff(gx, Dir::X);
    Field lyy = central_diff(gy, Dir::Y);
    Field out(f.grid(), 0.0);
    for (int i = 0; i < f.nx(); ++i)
        for (int j = 0; j < f.ny(); ++j) out(i, j) = lxx(i, j) + lyy(i, j);
    return out;
}

Field discrete_divergence(const Field& u1, const Field& u2) {
    Field d1 = central_diff(u1, Dir::X);
    Field d2 = central_diff(u2, Dir::Y);
    Field out(u1.grid(), 0.0);
    for (int i = -1; i <= u1.nx(); ++i)
        for (int j = -1; j <= u1.ny(); ++j) out(i, j) = d1(i, j) + d2(i, j);
    return out;
}

std::pair<Field, Field> discrete_gradient(const Field& p) {
    return {central_diff(p, Dir::X), central_diff(p, Dir::Y)};
}

Field operator+(const Field& a, const Field& b) {
    Field out = a;
    auto& v = out.raw();
    const auto& w = b.raw();
    for (size_t k = 0; k < v.size(); ++k) v[k] += w[k];
    return out;
}

Field operator-(const Field& a, const Field& b) {
    Field out = a;
    auto& v = out.raw();
    const auto& w = b.raw();
    for (size_t k = 0; k < v.size(); ++k) v[k] -= w[k];
    return out;
}

Field operator*(double s, const Field& a) {
    Field out = a;
    for (auto& x : out.raw()) x *= s;
    return out;
}

void axpy(double alpha, const Field& x, Field& y) {
    auto& v = y.raw();
    const auto& w = x.raw();
    for (size_t k = 0; k < v.size(); ++k) v[k] += alpha * w[k];
}

double dot_interior(const Field& a, const Field& b) {
    double s = 0.0;
    for (int i = 0; i < a.nx(); ++i)
        for (int j = 0; j < a.ny(); ++j) s += a(i, j) * b(i, j);
    return s;
}

}  // namespace machflow
