#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "loophom/bar_complex.hpp"
#include "loophom/graded_algebra.hpp"
#include "loophom/linalg.hpp"

namespace loophom {

enum class Variant { ToA, Dual };

const char* variant_name(Variant v);

// A (word, basis element) pair. For the to-A variant the element is the value's
// basis vector; for the dual variant it is the argument.
struct CochainKey {
  Word word;
  int element = 0;
  bool operator<(const CochainKey& o) const {
    if (WordOrder{}(word, o.word)) return true;
    if (WordOrder{}(o.word, word)) return false;
    return element < o.element;
  }
  bool operator==(const CochainKey& o) const { return element == o.element && word == o.word; }
};

using CochainValues = std::map<CochainKey, Rational>;

void add_term(CochainValues& values, const CochainKey& key, const Rational& q);
CochainValues add_scaled(const CochainValues& a, const CochainValues& b, const Rational& s);
int max_weight(const CochainValues& values);
CochainValues truncate(const CochainValues& values, int max_weight);

// Element of Hom(B(A), A)_n: word of bar degree p maps to A^q with n = p - q.
struct Cochain {
  int degree = 0;
  CochainValues values;
  AlgVector value(const Word& w) const;
  int weight_support() const { return max_weight(values); }
  bool operator==(const Cochain& o) const { return degree == o.degree && values == o.values; }
};

// Element of Hom(B(A), A∨)_n: (word of bar degree p, element of A^q) with n = p + q.
struct DualCochain {
  int degree = 0;
  CochainValues values;
  Rational value(const Word& w, int element) const;
  int weight_support() const { return max_weight(values); }
  bool operator==(const DualCochain& o) const { return degree == o.degree && values == o.values; }
};

int key_degree(const DGA& a, Variant v, const CochainKey& k);
// Throws GradingError if some entry is not of the cochain's degree.
void check_grading(const DGA& a, const Cochain& c);
void check_grading(const DGA& a, const DualCochain& c);

Cochain unit_cochain(const DGA& a);

// Pull form of δ: the source entries (with coefficients) whose values make up
// (δφ)(key). δ lowers the total degree by one in both variants.
std::vector<std::pair<CochainKey, Rational>> delta_terms(const DGA& a, Variant v, const CochainKey& target);

Cochain delta_to_A(const DGA& a, const Cochain& phi);
DualCochain delta_to_dual(const DGA& a, const DualCochain& psi);

// (φ1 ∪ φ2)(u v) = Σ (-1)^{|φ1|(|φ2| + |v|)} φ1(u) φ2(v). Words longer than
// max_weight (when given) are dropped.
Cochain cup(const DGA& a, const Cochain& f, const Cochain& g, std::optional<int> max_weight = std::nullopt);

// --- truncated complexes -----------------------------------------------------------

// Ordered basis of one degree of Hom(F^m B(A), ·).
class SliceBasis {
 public:
  SliceBasis() = default;
  SliceBasis(const DGA& a, Variant v, int degree, int weight_cutoff);

  Variant variant() const { return variant_; }
  int degree() const { return degree_; }
  int weight_cutoff() const { return cutoff_; }
  int size() const { return static_cast<int>(keys_.size()); }
  const CochainKey& operator[](int i) const { return keys_[static_cast<std::size_t>(i)]; }
  const std::vector<CochainKey>& keys() const { return keys_; }
  std::optional<int> find(const CochainKey& k) const;
  // Offset of the block of keys over word w, and the index of (w, element) given that offset.
  std::optional<int> block_start(const Word& w) const;
  std::optional<int> index_in_block(std::optional<int> start, const Word& w, int element) const;

  // Entries heavier than the cutoff are ignored; wrong-degree entries throw.
  SparseVector to_vector(const CochainValues& values) const;
  CochainValues from_vector(const SparseVector& v) const;

 private:
  Variant variant_ = Variant::Dual;
  int degree_ = 0;
  int cutoff_ = 0;
  std::vector<CochainKey> keys_;
  std::unordered_map<Word, int, WordHash> word_start_;
  std::vector<int> local_;  // position of each A-basis element inside its degree
};

// Matrix of δ from `source` (degree n) to `target` (degree n - 1).
SparseMatrix delta_matrix(const DGA& a, const SliceBasis& source, const SliceBasis& target);

// True when degree n of the variant holds every word the untruncated complex has.
bool slice_exhausted(const DGA& a, Variant v, int degree, int weight_cutoff);

struct ComplexSlice {
  Variant variant = Variant::Dual;
  int degree = 0;
  int weight_cutoff = 0;
  SliceBasis basis;
  SparseMatrix delta_out;  // degree -> degree - 1
  SparseMatrix delta_in;   // degree + 1 -> degree
  bool complete = false;
};

ComplexSlice assemble_complex(const DGA& a, Variant v, int degree, int weight_cutoff);

// Lazily built window of a truncated complex; caches bases and δ matrices.
class TruncatedComplex {
 public:
  TruncatedComplex(const DGA& a, Variant v, int weight_cutoff);

  const DGA& algebra() const { return *a_; }
  Variant variant() const { return variant_; }
  int weight_cutoff() const { return cutoff_; }

  const SliceBasis& basis(int n);
  const SparseMatrix& delta(int n);  // degree n -> n - 1
  const SubquotientBasis& homology(int n);
  bool exact(int n) const;  // degrees n - 1, n, n + 1 all exhausted

 private:
  const DGA* a_;
  Variant variant_;
  int cutoff_;
  std::map<int, SliceBasis> bases_;
  std::map<int, SparseMatrix> deltas_;
  std::map<int, SubquotientBasis> homology_;
};

// --- loop homology ring -------------------------------------------------------------

struct HomologyClassId {
  int degree = 0;
  int index = 0;
  bool operator<(const HomologyClassId& o) const {
    return degree != o.degree ? degree < o.degree : index < o.index;
  }
  bool operator==(const HomologyClassId& o) const { return degree == o.degree && index == o.index; }
};

std::string class_name(const HomologyClassId& id);

struct LoopHomologyDegree {
  int degree = 0;
  int betti = 0;
  bool exact = false;
  std::vector<Cochain> representatives;
};

struct LoopHomology {
  int weight_cutoff = 0;
  std::vector<LoopHomologyDegree> degrees;
  // (a, b) -> coordinates of a ∪ b on the classes of degree |a| + |b|. Products that
  // leave the window are expressed on that degree's own representatives.
  std::map<std::pair<HomologyClassId, HomologyClassId>, SparseVector> products;
  bool exact = true;
  std::optional<HomologyClassId> identity;
  const LoopHomologyDegree* find(int degree) const;
};

// Homology classes of one variant over a degree window, with an expression solver.
class HomologyWindow {
 public:
  HomologyWindow(const DGA& a, Variant v, int min_degree, int max_degree, int weight_cutoff);

  TruncatedComplex& complex() { return complex_; }
  int min_degree() const { return lo_; }
  int max_degree() const { return hi_; }
  int betti(int n);
  CochainValues representative(int n, int index);
  // Coordinates of a cycle modulo boundaries; nullopt when not a cycle in the window.
  std::optional<SparseVector> express(int n, const CochainValues& values);

 private:
  TruncatedComplex complex_;
  int lo_, hi_;
};

LoopHomology loop_homology(const DGA& a, int min_degree, int max_degree, int weight_cutoff);

// --- normalization ------------------------------------------------------------------

struct NormalizationResult {
  bool holds = true;
  // family (1..3), word, f, argument (dual only, -1 otherwise), offending value
  struct Witness {
    int family = 0;
    Word word;
    int f = 0;
    int argument = -1;
    std::string value;
  };
  std::vector<Witness> witnesses;
};

NormalizationResult normalization_check(const DGA& a, const DualCochain& psi);
NormalizationResult normalization_check(const DGA& a, const Cochain& phi);

}  // namespace loophom
