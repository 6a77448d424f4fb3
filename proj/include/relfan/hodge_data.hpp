#pragma once

// Pairings, nilpotent endomorphisms, monodromy weight filtrations and the
// relative monodromy filtration of a two-step extension H = H' + Z e.

#include "relfan/filtration.hpp"
#include "relfan/lattice.hpp"

#include <optional>
#include <string>

namespace relfan {

struct HodgeNumber {
  int p = 0;
  int q = 0;
  int count = 0;
  friend bool operator==(const HodgeNumber&, const HodgeNumber&) = default;
};

/// Hodge numbers of gr^{W'}_weight of the limit structure on H'.
struct GradedHodgeNumber {
  int weight = 0;
  int p = 0;
  int q = 0;
  int count = 0;
  friend bool operator==(const GradedHodgeNumber&, const GradedHodgeNumber&) = default;
};

/// Bilinear form <x, y> = x^T gram y with declared symmetry (+1 symmetric,
/// -1 alternating).
class Pairing {
 public:
  Pairing() = default;
  /// Throws PreconditionViolated if gram does not have the declared
  /// symmetry or is degenerate.
  static Pairing make(QMat gram, int sign);

  std::size_t dim() const { return gram_.rows(); }
  const QMat& gram() const { return gram_; }
  int sign() const { return sign_; }

  Rat operator()(const Vec& x, const Vec& y) const { return dot(x, gram_.apply(y)); }
  /// g^T G g = G.
  bool preserved_by(const QMat& g) const;
  /// h^T G + G h = 0.
  bool infinitesimally_preserved_by(const QMat& h) const;

 private:
  QMat gram_;
  int sign_ = 1;
};

class NilpotentEndo {
 public:
  NilpotentEndo() = default;
  /// Throws MathError("NotNilpotent").
  static NilpotentEndo make(QMat m);

  const QMat& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }
  /// Smallest e >= 0 with m^e = 0 (0 only for the zero-dimensional space).
  unsigned index() const { return index_; }

 private:
  QMat m_;
  unsigned index_ = 0;
};

/// exp of a nilpotent matrix by the finite series.
QMat exp_nilpotent(const QMat& n);
/// log of a unipotent matrix by the finite series. Throws
/// MathError("NotUnipotent") if g - I is not nilpotent.
NilpotentEndo log_unipotent(const QMat& g);
inline NilpotentEndo log_unipotent(const ZMat& g) { return log_unipotent(to_rat(g)); }

/// The monodromy weight filtration W(N) centred at `center`.
Filtration monodromy_filtration(const NilpotentEndo& n, int center);

/// Checks N W_k in W_{k-2} and N^l : gr_{c+l} -> gr_{c-l} bijective.
bool satisfies_monodromy_axioms(const QMat& n, const Filtration& w, int center);

struct DegenerationData {
  std::string name;
  Pairing pairing;
  ZMat gamma;
  NilpotentEndo log_monodromy;
  int weight_k = -1;
  std::vector<HodgeNumber> hodge_numbers;
  /// Hodge numbers of the graded pieces of W' = W(N')[-k]; optional input.
  std::optional<std::vector<GradedHodgeNumber>> limit_hodge_numbers;

  std::size_t rank() const { return gamma.rows(); }
  const QMat& n_prime() const { return log_monodromy.matrix(); }

  /// Validates: gamma unipotent and pairing-preserving, N' = log gamma is
  /// infinitesimally pairing-preserving, k < 0, pairing symmetry matches
  /// the parity of k. Throws MathError.
  static DegenerationData make(std::string name, Pairing pairing, ZMat gamma, int weight_k,
                               std::vector<HodgeNumber> hodge_numbers,
                               std::optional<std::vector<GradedHodgeNumber>> limit = std::nullopt);
};

/// H = H' + Z e with W_j = 0 (j < k), H' (k <= j < 0), H (j >= 0). The
/// basis of H is the basis of H' followed by e.
class ExtensionFrame {
 public:
  explicit ExtensionFrame(DegenerationData base);

  const DegenerationData& base() const { return base_; }
  std::size_t rank() const { return base_.rank(); }
  std::size_t dim() const { return base_.rank() + 1; }
  std::size_t e_index() const { return base_.rank(); }
  int weight_k() const { return base_.weight_k; }

  const Filtration& W() const { return w_; }
  /// W' = W(N')[-k] on H', centred at k.
  const Filtration& W_prime() const { return w_prime_; }
  const QMat& n_prime() const { return base_.n_prime(); }
  const Subspace& image_n_prime() const { return im_; }
  const Subspace& kernel_n_prime() const { return ker_; }

  /// Ambient Gram matrix of the pairing on gr^W_w (w = 0 or k); vanishes
  /// on W_{w-1}.
  const QMat& graded_gram(int w) const { return w == 0 ? gram0_ : gramk_; }
  int graded_sign(int w) const { return w == 0 ? 1 : base_.pairing.sign(); }

  /// The endomorphism of H with the given restriction to H' and N(e) = v.
  QMat lift(const QMat& restriction, const Vec& image_of_e) const;
  /// Restriction N' and N(e) = v.
  QMat lift(const Vec& image_of_e) const { return lift(n_prime(), image_of_e); }
  QMat restriction(const QMat& n) const;
  Vec image_of_e(const QMat& n) const;
  Vec embed(const Vec& v_in_h_prime) const;

  /// N in g = End(H, W, graded pairings): N(H') in H', N(e) in H', and
  /// N|H' infinitesimally preserves <,>'.
  bool in_g(const QMat& n) const;
  /// If N(H) in H' and N|H' = lambda N' with lambda >= 0, returns lambda.
  /// When N' = 0 and N|H' = 0 the answer is 1.
  std::optional<Rat> restriction_scale(const QMat& n) const;

 private:
  DegenerationData base_;
  Filtration w_;
  Filtration w_prime_;
  Subspace im_;
  Subspace ker_;
  QMat gram0_;
  QMat gramk_;
};

/// gamma with gamma|H' = (gamma')^power_k and gamma(e) = e + h.
struct GammaElement {
  int power_k = 0;
  IntVec h;
};

/// Throws MathError("NotInGamma") if h is not an integral vector of H'.
GammaElement make_gamma(const ExtensionFrame& frame, int power_k, IntVec h);
QMat gamma_matrix(const ExtensionFrame& frame, const GammaElement& g);
GammaElement gamma_inverse(const ExtensionFrame& frame, const GammaElement& g);
/// Decides whether an integer matrix on H lies in Gamma; returns the
/// element when it does.
std::optional<GammaElement> as_gamma(const ExtensionFrame& frame, const ZMat& m);

/// N(e) in Im(N'') + W''_{-2} where N'' = N|H' (= lambda N'), W'' = W(N'')[-k].
/// Throws PreconditionViolated if N(H) is not in H' or N|H' is not a
/// nonnegative multiple of N'.
bool admissible_direction(const ExtensionFrame& frame, const QMat& n);

/// M(N, W) when it exists. The construction splits e~ = e - a with
/// N(e) = N''(a) + u, u in W''_{-2}; `kernel_shift` (an element of Ker N'')
/// is added to a to exercise the independence of the choice. Both axioms
/// are verified before returning; a failure throws InvariantViolated.
std::optional<Filtration> relative_monodromy_filtration(const ExtensionFrame& frame, const QMat& n,
                                                        const std::optional<Vec>& kernel_shift = std::nullopt);

/// The two defining axioms of M(N, W) checked directly.
bool satisfies_relative_axioms(const ExtensionFrame& frame, const QMat& n, const Filtration& m);

/// N1 N2 = N2 N1 decided by N1(e) - N2(e) in Ker N''; cross-checked with
/// the commutator (mismatch throws InvariantViolated).
bool commutes_by_criterion(const ExtensionFrame& frame, const QMat& n1, const QMat& n2);

}  // namespace relfan
