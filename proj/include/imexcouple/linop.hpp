#pragma once

#include <span>
#include <vector>

#include "imexcouple/boundary.hpp"
#include "imexcouple/gmres.hpp"
#include "imexcouple/residual.hpp"
#include "imexcouple/state.hpp"

namespace imexcouple {

// Full: linearized inviscid and viscous operator. Inviscid: inviscid part
// only. Vertical: inviscid fluxes through horizontal faces only, which
// decouples the columns.
enum class LinearOperatorKind { Full, Inviscid, Vertical };

const char* to_string(LinearOperatorKind kind);

struct StageSolveResult {
  ConservedField solution;
  int iterations = 0;         // operator applications summed over all solves
  int max_iterations = 0;     // largest count of a single solve (column)
  double residual_norm = 0.0; // largest relative residual at exit
};

// Linearization L(q_ref, .) of the spatial operator about a reference state.
// The reconstruction uses face-neighbour central slopes along the face
// normal, so every line of faces is independent of its neighbours. Interior
// faces combine the exact Euler flux Jacobian with a finite-difference
// linearization of the Roe dissipation; solid and interface faces use the
// linearized reflection flux with the boundary data held fixed. Full adds a
// finite-difference derivative of the viscous residual.
class LinearOperator {
 public:
  LinearOperator(LinearOperatorKind kind, const DomainSpec& domain, const ConservedField& reference,
                 const InterfaceWall* frozen_wall);

  LinearOperatorKind kind() const { return kind_; }
  const ConservedField& reference() const { return reference_; }

  RhsField apply(const ConservedField& q) const;

  // Column i (1-based) of the Vertical operator; q and out hold 4*nz values
  // ordered by j.
  void apply_column(int i, std::span<const double> q, std::span<double> out) const;

  // Solves (I - alpha L) x = rhs from the initial guess. Vertical solves each
  // column independently. Throws SolverError when any solve does not reach
  // the tolerance.
  StageSolveResult solve(double alpha, const ConservedField& rhs, const ConservedField& initial_guess,
                         const KrylovSettings& settings) const;

 private:
  struct Line {
    int n = 0;
    bool periodic = false;
    Mat4 ghost_lo{};
    Mat4 ghost_hi{};
    std::vector<Mat4> jl;  // n+1 faces; wall faces keep their Jacobian here
    std::vector<Mat4> jr;
  };

  Line build_line(const std::vector<Vec4>& ref, bool periodic, const Vec4& nrm,
                  const BoundarySpec& lo, const BoundarySpec& hi, Axis axis, double wall_u_lo,
                  double wall_T_lo, double wall_u_hi, double wall_T_hi) const;
  // out[j] += -(F_{j+1/2} - F_{j-1/2}) * inv_h over a strided line.
  static void apply_line(const Line& line, const double* q, std::size_t stride, double* out,
                         double inv_h);

  LinearOperatorKind kind_;
  DomainSpec domain_;
  ConservedField reference_;
  InterfaceWall wall_;
  bool has_wall_ = false;
  std::vector<Line> columns_;
  std::vector<Line> rows_;
  RhsField viscous_ref_;
};

// Dense matrix of an operator on a small field, column k = L e_k. Intended
// for tests.
std::vector<double> assemble_dense(const LinearOperator& op);

}  // namespace imexcouple
