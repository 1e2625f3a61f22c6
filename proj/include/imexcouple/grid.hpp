#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace imexcouple {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Uniform Cartesian mesh of one subdomain. Cells use 1-based (i, j) indices;
// storage order is row-major over j, then i.
struct StructuredGrid2D {
  int nx = 0;
  int nz = 0;
  double x0 = 0.0;
  double z0 = 0.0;
  double dx = 0.0;
  double dz = 0.0;

  std::size_t cell_count() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(nz); }
  double cell_measure() const { return dx * dz; }
  std::size_t x_face_count() const { return static_cast<std::size_t>(nx + 1) * nz; }
  std::size_t z_face_count() const { return static_cast<std::size_t>(nx) * (nz + 1); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j - 1) * nx + static_cast<std::size_t>(i - 1);
  }
  double x1() const { return x0 + nx * dx; }
  double z1() const { return z0 + nz * dz; }
};

StructuredGrid2D build_grid(int nx, int nz, Interval x_extent, Interval z_extent);

// Throws std::out_of_range outside 1..nx, 1..nz.
std::pair<double, double> cell_center(const StructuredGrid2D& grid, int i, int j);

// Cell-indexed storage with one ghost layer on every side, corners included.
// Indices run over 0..nx+1 and 0..nz+1.
template <class T>
class Ghosted {
 public:
  Ghosted() = default;
  Ghosted(int nx, int nz, const T& fill = T{})
      : nx_(nx), nz_(nz), data_(static_cast<std::size_t>(nx + 2) * (nz + 2), fill) {}

  T& operator()(int i, int j) { return data_[static_cast<std::size_t>(j) * (nx_ + 2) + i]; }
  const T& operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(j) * (nx_ + 2) + i];
  }
  int nx() const { return nx_; }
  int nz() const { return nz_; }
  bool closed() const { return closed_; }
  void mark_closed(bool value = true) { closed_ = value; }

 private:
  int nx_ = 0;
  int nz_ = 0;
  std::vector<T> data_;
  bool closed_ = false;
};

}  // namespace imexcouple
