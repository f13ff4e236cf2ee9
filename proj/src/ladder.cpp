#include "qed/ladder.hpp"

#include <bit>
#include <stdexcept>

namespace qed {

namespace {

// Sorts ops into the requested order by bubble passes, counting
// transpositions. Returns 0 on a repeated mode (the term vanishes),
// otherwise +1/-1.
int sort_sign(std::vector<int>& modes, bool ascending) {
  int swaps = 0;
  for (std::size_t i = 0; i < modes.size(); ++i)
    for (std::size_t j = i + 1; j < modes.size(); ++j) {
      if (modes[i] == modes[j]) return 0;
      bool out_of_order = ascending ? modes[i] > modes[j] : modes[i] < modes[j];
      if (out_of_order) {
        std::swap(modes[i], modes[j]);
        ++swaps;
      }
    }
  return (swaps & 1) ? -1 : 1;
}

std::uint64_t mask_of(const std::vector<int>& modes) {
  std::uint64_t m = 0;
  for (int mode : modes) m |= std::uint64_t{1} << mode;
  return m;
}

}  // namespace

FermionOperator FermionOperator::identity() {
  FermionOperator op;
  op.terms_[{0, 0}] = 1.0;
  return op;
}

FermionOperator FermionOperator::creation(int mode) {
  FermionOperator op;
  op.terms_[{std::uint64_t{1} << mode, 0}] = 1.0;
  return op;
}

FermionOperator FermionOperator::annihilation(int mode) {
  FermionOperator op;
  op.terms_[{0, std::uint64_t{1} << mode}] = 1.0;
  return op;
}

FermionOperator FermionOperator::number(int mode) {
  FermionOperator op;
  op.terms_[{std::uint64_t{1} << mode, std::uint64_t{1} << mode}] = 1.0;
  return op;
}

FermionOperator FermionOperator::from_sequence(const LadderSeq& seq, cd coeff) {
  FermionOperator out;
  if (coeff == 0.0) return out;
  std::vector<std::pair<LadderSeq, cd>> work;
  work.emplace_back(seq, coeff);
  while (!work.empty()) {
    auto [s, c] = std::move(work.back());
    work.pop_back();
    // Leftmost annihilator standing directly left of a creator.
    std::size_t p = s.size();
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (!s[i].create && s[i + 1].create) {
        p = i;
        break;
      }
    if (p == s.size()) {
      // Already normal ordered: canonicalize the two blocks.
      std::vector<int> cre, ann;
      for (const LadderOp& op : s) (op.create ? cre : ann).push_back(op.mode);
      int s1 = sort_sign(cre, /*ascending=*/true);
      int s2 = sort_sign(ann, /*ascending=*/false);
      if (s1 * s2 != 0)
        out.add_term({mask_of(cre), mask_of(ann)},
                     c * static_cast<double>(s1 * s2));
      continue;
    }
    // c_j c+_i = delta_ij - c+_i c_j
    if (s[p].mode == s[p + 1].mode) {
      LadderSeq contracted;
      contracted.reserve(s.size() - 2);
      for (std::size_t i = 0; i < s.size(); ++i)
        if (i != p && i != p + 1) contracted.push_back(s[i]);
      work.emplace_back(std::move(contracted), c);
    }
    LadderSeq swapped = s;
    std::swap(swapped[p], swapped[p + 1]);
    work.emplace_back(std::move(swapped), -c);
  }
  return out;
}

FermionOperator FermionOperator::wick_from_sequence(const LadderSeq& seq,
                                                    cd coeff) {
  FermionOperator out;
  if (coeff == 0.0) return out;
  // Signed reordering without contractions: sort a copy of the sequence into
  // canonical order counting transpositions of anticommuting symbols.
  LadderSeq s = seq;
  auto rank_less = [](const LadderOp& a, const LadderOp& b) {
    if (a.create != b.create) return a.create;  // creators first
    return a.create ? a.mode < b.mode : a.mode > b.mode;
  };
  int swaps = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j]) return out;  // repeated symbol: term vanishes
      if (rank_less(s[j], s[i])) {
        std::swap(s[i], s[j]);
        ++swaps;
      }
    }
  std::vector<int> cre, ann;
  for (const LadderOp& op : s) (op.create ? cre : ann).push_back(op.mode);
  out.add_term({mask_of(cre), mask_of(ann)},
               coeff * ((swaps & 1) ? -1.0 : 1.0));
  return out;
}

FermionOperator& FermionOperator::operator+=(const FermionOperator& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

FermionOperator& FermionOperator::operator-=(const FermionOperator& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

FermionOperator& FermionOperator::operator*=(cd s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

FermionOperator FermionOperator::operator*(const FermionOperator& o) const {
  FermionOperator out;
  for (const auto& [m1, c1] : terms_) {
    LadderSeq s1 = sequence_of(m1);
    for (const auto& [m2, c2] : o.terms_) {
      LadderSeq s = s1;
      LadderSeq s2 = sequence_of(m2);
      s.insert(s.end(), s2.begin(), s2.end());
      out += from_sequence(s, c1 * c2);
    }
  }
  return out;
}

FermionOperator FermionOperator::adjoint() const {
  FermionOperator out;
  for (const auto& [m, c] : terms_)
    out.terms_[{m.annihilate, m.create}] = std::conj(c);
  return out;
}

FermionOperator& FermionOperator::compress(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = std::abs(it->second) <= tol ? terms_.erase(it) : std::next(it);
  return *this;
}

void FermionOperator::add_term(const LadderMonomial& m, cd coeff) {
  auto [it, inserted] = terms_.emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

int FermionOperator::max_mode() const {
  int top = -1;
  for (const auto& [m, c] : terms_) {
    std::uint64_t bits = m.create | m.annihilate;
    if (bits) top = std::max(top, 63 - std::countl_zero(bits));
  }
  return top;
}

LadderSeq sequence_of(const LadderMonomial& m) {
  LadderSeq seq;
  for (std::uint64_t c = m.create; c;) {
    int mode = std::countr_zero(c);
    seq.push_back({true, mode});
    c &= c - 1;
  }
  for (std::uint64_t a = m.annihilate; a;) {
    int mode = 63 - std::countl_zero(a);
    seq.push_back({false, mode});
    a &= ~(std::uint64_t{1} << mode);
  }
  return seq;
}

std::optional<std::pair<std::uint64_t, double>> apply_monomial(
    const LadderMonomial& m, std::uint64_t mask) {
  double sign = 1.0;
  std::uint64_t state = mask;
  auto parity_below = [&state](int mode) {
    std::uint64_t below = state & ((std::uint64_t{1} << mode) - 1);
    return (std::popcount(below) & 1) ? -1.0 : 1.0;
  };
  // Annihilators act smallest index first (rightmost in the monomial).
  for (std::uint64_t a = m.annihilate; a; a &= a - 1) {
    int mode = std::countr_zero(a);
    std::uint64_t bit = std::uint64_t{1} << mode;
    if (!(state & bit)) return std::nullopt;
    sign *= parity_below(mode);
    state &= ~bit;
  }
  // Creators act largest index first.
  for (std::uint64_t c = m.create; c;) {
    int mode = 63 - std::countl_zero(c);
    std::uint64_t bit = std::uint64_t{1} << mode;
    c &= ~bit;
    if (state & bit) return std::nullopt;
    sign *= parity_below(mode);
    state |= bit;
  }
  return std::make_pair(state, sign);
}

}  // namespace qed
