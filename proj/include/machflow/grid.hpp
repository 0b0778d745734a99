// grid.hpp -- uniform Cartesian mesh, ghosted cell-centered fields, and the
// mu/delta central difference operators the scheme is built on.
#pragma once

#include <string>
#include <vector>

namespace machflow {

enum class BcKind { Periodic, Wall };

// Which spatial direction an operator acts in.
enum class Dir { X = 0, Y = 1 };

// Mirror parity of a field component at a wall, per direction.
// Scalars and tangential momenta mirror evenly, the wall-normal momentum
// mirrors oddly. Ignored for periodic boundaries.
enum class Parity { Even, Odd };

struct Grid2D {
    int nx = 0, ny = 0;
    double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
    double dx = 0.0, dy = 0.0;
    BcKind bc = BcKind::Periodic;

    Grid2D() = default;
    Grid2D(int nx_, int ny_, double x_lo_, double x_hi_, double y_lo_, double y_hi_,
           BcKind bc_ = BcKind::Periodic);

    static Grid2D unit_square(int n, BcKind bc = BcKind::Periodic) {
        return Grid2D(n, n, 0.0, 1.0, 0.0, 1.0, bc);
    }

    double xc(int i) const { return x_lo + (i + 0.5) * dx; }
    double yc(int j) const { return y_lo + (j + 0.5) * dy; }
    double cell_area() const { return dx * dy; }
    double spacing(Dir d) const { return d == Dir::X ? dx : dy; }

    bool same_layout(const Grid2D& o) const {
        return nx == o.nx && ny == o.ny && dx == o.dx && dy == o.dy && bc == o.bc;
    }
};

// Cell-centered scalar field with two ghost layers per side.
// Interior indices run i in [0,nx), j in [0,ny); ghosts extend to -2..nx+1.
class Field {
  public:
    static constexpr int ghost = 2;

    Field() = default;
    explicit Field(const Grid2D& g, double fill = 0.0);

    const Grid2D& grid() const { return grid_; }
    int nx() const { return grid_.nx; }
    int ny() const { return grid_.ny; }

    double& operator()(int i, int j) { return v_[idx(i, j)]; }
    double operator()(int i, int j) const { return v_[idx(i, j)]; }

    // Raw storage, (nx+4)*(ny+4) row-major over i.
    std::vector<double>& raw() { return v_; }
    const std::vector<double>& raw() const { return v_; }

    void fill(double c);

    // Reductions over interior cells only.
    double min_interior() const;
    double max_abs_interior() const;
    double sum_interior() const;
    double mean_interior() const;

  private:
    int idx(int i, int j) const { return (i + ghost) * stride_ + (j + ghost); }

    Grid2D grid_;
    int stride_ = 0;
    std::vector<double> v_;
};

// Fill the two ghost layers of f from the interior. Periodic grids wrap;
// wall grids mirror with the given parity per direction.
void apply_bc(Field& f, Parity px = Parity::Even, Parity py = Parity::Even);

// (f_{i+1} - f_{i-1}) / (2 dx): the mu*delta/dx central derivative.
// The result is computed on the interior plus one ghost ring (so a second
// application reaches the full interior); the outermost ring is left zero.
// Requires f's ghost layers to be current.
Field central_diff(const Field& f, Dir d);

// Composition of central differences per direction: the wide five-point
// Laplacian (f_{i+2} - 2 f_i + f_{i-2})/(4 dx^2) + (y analog), evaluated as
// the literal chain so it matches discrete_divergence(discrete_gradient(.))
// bitwise. Interior cells only.
Field wide_laplacian(const Field& f);

// Allocation-free variant for solver inner loops; reproduces the chained
// central_diff arithmetic operation-for-operation, so results are bitwise
// identical to wide_laplacian.
void wide_laplacian_into(const Field& f, Field& out);

Field discrete_divergence(const Field& u1, const Field& u2);
std::pair<Field, Field> discrete_gradient(const Field& p);

// Elementwise helpers (interior + ghosts, no bc logic).
Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);
void axpy(double alpha, const Field& x, Field& y);  // y += alpha*x, all cells

// <a,b> over interior cells (no cell-area weight).
double dot_interior(const Field& a, const Field& b);

}  // namespace machflow
