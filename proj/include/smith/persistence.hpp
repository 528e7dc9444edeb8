#pragma once

// Barcodes of action-filtered complexes and the barcode-level Smith checks.
// Bars are half-open (a, b] or (a, ∞) with rational endpoints.

#include "smith/complex.hpp"
#include "smith/generators.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace smith {

struct Bar {
  Rational start;
  std::optional<Rational> end;  // empty for an infinite bar
  std::size_t mult = 1;

  bool finite() const { return end.has_value(); }
  bool contains(const Rational& t) const { return start < t && (!end || t <= *end); }
  friend bool operator==(const Bar&, const Bar&) = default;
};

class Barcode {
 public:
  /// Sorts by (start, end) with infinite ends last and merges equal bars.
  /// Throws MalformedInput for start >= end or zero multiplicity.
  Barcode(Prime p, std::vector<Bar> bars);

  Prime modulus() const { return p_; }
  const std::vector<Bar>& bars() const { return bars_; }
  bool empty() const { return bars_.empty(); }
  /// Every start and finite end, sorted and without repeats.
  std::vector<Rational> endpoints() const;

  friend bool operator==(const Barcode& a, const Barcode& b) {
    return a.p_ == b.p_ && a.bars_ == b.bars_;
  }

 private:
  Prime p_;
  std::vector<Bar> bars_;
};

/// Column reduction over F_p with generators ordered by (action, id).
/// Throws FiltrationViolation unless d strictly decreases action.
Barcode barcode_from_filtered(const EquivariantComplex& c);

/// A complex whose barcode is b: x -> y for each finite bar, a cocycle for
/// each infinite bar. Finite bars use degrees 0 -> 1, infinite bars degree 0.
EquivariantComplex realize_barcode(const Barcode& b);

/// dim of the window homology read off the barcode:
///   (-∞, t): Σ_{t ∈ I} m;  (t, ∞): Σ_{t ∈ I finite} m + Σ_{t ∉ I infinite} m;
///   (a, b): Σ_{b ∈ I, a ∉ I} m + Σ_{b ∉ I, a ∈ I} m;  (-∞, ∞): infinite bars.
/// Throws SpectralEndpoint when an endpoint of w is a bar endpoint.
std::size_t window_dim(const Barcode& b, const ActionWindow& w);

struct BarStats {
  std::size_t finite_count = 0;    // K
  std::size_t infinite_count = 0;  // B
  std::size_t generator_count = 0; // N = 2K + B
  Rational beta_tot{0};
  Rational beta_max{0};
  std::optional<Rational> c_plus;   // max start of an infinite bar
  std::optional<Rational> c_minus;  // min start of an infinite bar
};

BarStats bar_stats(const Barcode& b);
/// Throw EmptyBarcode when there is no infinite bar.
Rational c_plus(const Barcode& b);
Rational c_minus(const Barcode& b);

/// Finite bars containing t, with multiplicity.
std::size_t finite_bars_containing(const Barcode& b, const Rational& t);

/// Midpoints between consecutive events, plus one point beyond each end.
std::vector<Rational> generic_points(std::vector<Rational> events);

/// ∫ m(t) dt over the real line.
Rational integrate_finite_bars(const Barcode& b);

struct MViolation {
  Rational t;
  std::size_t lhs = 0;  // m(t, b1)
  std::size_t rhs = 0;  // m(pt, bp)
};

struct WindowViolation {
  ActionWindow window;  // I; the comparison uses pI on bp
  std::size_t lhs = 0;
  std::size_t rhs = 0;
};

struct SmithBarcodeReport {
  std::vector<Rational> test_points;
  std::vector<MViolation> m_violations;
  Rational beta_tot_1{0};
  Rational beta_tot_p{0};
  bool integral_matches = false;  // ∫ m recovers β_tot on both sides
  bool scale_holds = false;       // β_tot(bp) >= p β_tot(b1)
  std::size_t windows_checked = 0;
  std::vector<WindowViolation> window_violations;

  bool m_holds() const { return m_violations.empty(); }
  bool window_holds() const { return window_violations.empty(); }
  bool all_hold() const { return m_holds() && integral_matches && scale_holds && window_holds(); }
};

/// b1 is the barcode of φ, bp of φ^p. Test points are midpoints of the joint
/// arrangement of the endpoints of b1 and (endpoints of bp) / p; windows are
/// every (-∞, t), (t, ∞) and (s, t) over test points.
SmithBarcodeReport smith_barcode_check(const Barcode& b1, const Barcode& bp, Prime p);

/// A window with closure avoiding 0 and positive window_dim, searched over
/// every canonical window of the arrangement of bar endpoints and 0; empty
/// when no such window exists. Throws EmptyBarcode for a barcode without bars.
std::optional<ActionWindow> torsion_witness(const Barcode& b);

/// Every bar of b1 scaled by p, plus extra_bars random finite bars, starts in
/// [-8, 8) and lengths in [1/4, 4], quarter-integers. Deterministic in seed.
Barcode generate_iterated_barcode(const Barcode& b1, Prime p, std::size_t extra_bars,
                                  std::uint64_t seed);

/// Up to max_bars bars, multiplicity 1 or 2, quarter-integer starts in
/// [-4, 4) and finite lengths up to 2; about a third of them infinite.
Barcode random_barcode(gen::Rng& rng, Prime p, std::size_t max_bars);

/// γ >= β_max.
bool gamma_dominates_beta(const Barcode& b, const Rational& gamma);

struct GrowthStep {
  int k = 0;
  Rational beta_tot{0};
  Rational bound{0};  // p^{k-k0} β_tot at k0
  bool scale_holds = false;
  bool count_holds = false;  // (N - B) γ >= 2 p^{k-k0} β_tot at k0, when γ given
};

/// barcodes[k] is the barcode of φ^{p^k}; gammas, if non-empty, are the
/// matching spectral norms. Checks the growth chain from k0 on.
std::vector<GrowthStep> growth_chain_check(const std::vector<Barcode>& barcodes, Prime p,
                                           std::size_t k0,
                                           const std::vector<Rational>& gammas = {});

}  // namespace smith
