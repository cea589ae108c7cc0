#pragma once

// Howell form of a submodule of (Z/l^N)^dim.
//
// Rows are kept with strictly increasing pivot columns, each pivot equal to
// l^v, and entries above a pivot reduced below l^v. Annihilator multiples are
// fed back during elimination, so for every column j the rows with pivot >= j
// span the elements of the module whose first j coordinates vanish. That
// property makes membership a single back-substitution pass and lets callers
// read off kernels of coordinate projections.
//
// Optionally each row carries its coefficients over the generators it was
// built from, which gives express().

#include <cstdint>
#include <optional>
#include <vector>

#include "core/padic.hpp"

namespace openimage {

using Residues = std::vector<std::uint64_t>;

class Echelon {
 public:
  struct Row {
    Residues v;
    int pivot = 0;
    int pivot_val = 0;
    Residues coeff;  // empty unless tracking
  };

  Echelon(const PadicContext& ctx, int dim, bool track = false);
  static Echelon build(const PadicContext& ctx, int dim, const std::vector<Residues>& generators, bool track = false);

  const PadicContext& context() const noexcept { return *ctx_; }
  int dim() const noexcept { return dim_; }
  bool tracking() const noexcept { return track_; }
  int generator_count() const noexcept { return generators_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  bool is_zero() const noexcept { return rows_.empty(); }

  bool contains(const Residues& v) const;
  // Coefficients c with sum c_i generator_i == v, or nullopt. Needs tracking.
  std::optional<Residues> express(const Residues& v) const;
  // Adds a generator; returns false (and leaves the form untouched) when it is
  // already a member. With tracking the generator is always recorded.
  bool insert(const Residues& v);

  // Same module, compared through the canonical forms.
  bool same_module(const Echelon& o) const;

 private:
  void rebuild(std::vector<Row> pool);
  std::optional<Residues> reduce(const Residues& v, bool want_coeff) const;

  const PadicContext* ctx_;
  int dim_;
  bool track_;
  int generators_ = 0;
  std::vector<Row> rows_;
};

}  // namespace openimage
