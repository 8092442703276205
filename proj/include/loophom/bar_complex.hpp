#pragma once

#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "loophom/graded_algebra.hpp"
#include "loophom/linalg.hpp"

namespace loophom {

// A bar word: letters are A-basis indices of positive degree.
using Word = std::vector<int>;

// Weight first, then lexicographic on letter indices.
struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int x : w) h = (h ^ static_cast<std::size_t>(x + 1)) * 0x100000001b3ull;
    return h ^ w.size();
  }
};

using BarChain = std::map<Word, Rational, WordOrder>;

int suspended_degree(const DGA& a, int letter);
int bar_degree(const DGA& a, const Word& w);
int bar_degree(const DGA& a, const Word& w, std::size_t begin, std::size_t end);
// eps[i] = bar degree of the length-i prefix, i = 0..r.
std::vector<int> prefix_degrees(const DGA& a, const Word& w);
std::string format_word(const DGA& a, const Word& w);
std::string format_chain(const DGA& a, const BarChain& c);

void add_term(BarChain& c, const Word& w, const Rational& q);

BarChain bar_d(const DGA& a, const Word& w);
BarChain bar_d(const DGA& a, const BarChain& c);
std::vector<std::pair<Word, Word>> bar_coproduct(const Word& w);

// All words with bar degree in [min_degree, max_degree] and weight <= max_weight,
// in WordOrder.
std::vector<Word> enumerate_words(const DGA& a, int min_degree, int max_degree, int max_weight);

// True when every word of bar degree <= degree has weight <= max_weight.
bool bar_degree_exhausted(const DGA& a, int degree, int max_weight);

struct BarSlice {
  int degree = 0;
  int max_weight = 0;
  std::vector<Word> basis;
  // d_B raises bar degree: rows index the degree+1 slice, columns this slice.
  SparseMatrix d_matrix;
  bool complete = false;
};

std::vector<BarSlice> bar_basis(const DGA& a, int min_degree, int max_degree, int max_weight);

struct BarHomology {
  int degree = 0;
  int betti = 0;
  bool exact = false;  // false: weight-truncated
  std::vector<BarChain> representatives;
};

std::vector<BarHomology> bar_homology(const DGA& a, int min_degree, int max_degree, int max_weight);

// word | degree | weight | d_B expansion
void write_bar_slice_tsv(std::ostream& os, const DGA& a, const BarSlice& slice);

}  // namespace loophom
