#pragma once

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "numeric.hpp"

namespace tropcount {

/**
 * A finite sequence of naturals (a_1, a_2, ...), almost all zero.
 *
 * Entries are 1-indexed: entry(k) is a_k, the number of contact points of
 * weight k. The storage is kept canonical (no trailing zeros), so equality,
 * ordering and hashing all see (1,0,0) and (1) as the same sequence. The
 * empty sequence is the zero sequence (0).
 */
class Sequence {
 public:
  using value_type = std::uint32_t;

  Sequence() = default;
  Sequence(std::initializer_list<value_type> entries) : entries_(entries) { trim(); }
  explicit Sequence(std::vector<value_type> entries) : entries_(std::move(entries)) { trim(); }

  /// a_k for k >= 1; zero past the stored length.
  value_type entry(std::size_t k) const {
    return (k >= 1 && k <= entries_.size()) ? entries_[k - 1] : 0;
  }

  void set(std::size_t k, value_type v) {
    if (k == 0) throw PreconditionError("sequence entries are 1-indexed");
    if (k > entries_.size()) {
      if (v == 0) return;
      entries_.resize(k, 0);
    }
    entries_[k - 1] = v;
    trim();
  }

  /// Index of the last non-zero entry (0 for the zero sequence).
  std::size_t length() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }
  std::span<const value_type> entries() const { return entries_; }

  friend bool operator==(Sequence const&, Sequence const&) = default;
  friend auto operator<=>(Sequence const&, Sequence const&) = default;

 private:
  void trim() {
    while (!entries_.empty() && entries_.back() == 0) entries_.pop_back();
  }

  std::vector<value_type> entries_;
};

/// |a| = a_1 + a_2 + ...
inline std::uint64_t norm_abs(Sequence const& s) {
  std::uint64_t total = 0;
  for (auto v : s.entries()) total += v;
  return total;
}

/// Ia = 1 a_1 + 2 a_2 + ...
inline std::uint64_t weighted_sum(Sequence const& s) {
  std::uint64_t total = 0;
  std::uint64_t k = 1;
  for (auto v : s.entries()) total += k++ * v;
  return total;
}

/// I^a = 1^{a_1} 2^{a_2} ...
inline BigInt weighted_power(Sequence const& s) {
  BigInt result = 1;
  std::uint32_t k = 1;
  for (auto v : s.entries()) {
    result *= boost::multiprecision::pow(BigInt(k), v);
    ++k;
  }
  return result;
}

inline Sequence seq_add(Sequence const& a, Sequence const& b) {
  std::vector<Sequence::value_type> out(std::max(a.length(), b.length()));
  for (std::size_t k = 1; k <= out.size(); ++k) out[k - 1] = a.entry(k) + b.entry(k);
  return Sequence(std::move(out));
}

/// Entrywise a >= b.
inline bool seq_geq(Sequence const& a, Sequence const& b) {
  for (std::size_t k = 1; k <= b.length(); ++k)
    if (a.entry(k) < b.entry(k)) return false;
  return true;
}

/// Entrywise a <= b.
inline bool seq_leq(Sequence const& a, Sequence const& b) { return seq_geq(b, a); }

/// a - b; throws NegativeEntry unless b <= a entrywise.
inline Sequence seq_sub(Sequence const& a, Sequence const& b) {
  if (!seq_geq(a, b)) throw NegativeEntry("sequence subtraction would produce a negative entry");
  std::vector<Sequence::value_type> out(a.length());
  for (std::size_t k = 1; k <= out.size(); ++k) out[k - 1] = a.entry(k) - b.entry(k);
  return Sequence(std::move(out));
}

/// e_k: a single 1 at position k.
inline Sequence unit_seq(std::size_t k) {
  if (k == 0) throw PreconditionError("unit sequence index must be >= 1");
  std::vector<Sequence::value_type> out(k, 0);
  out[k - 1] = 1;
  return Sequence(std::move(out));
}

/// prod_k C(a_k, b_k).
inline BigInt seq_binom(Sequence const& a, Sequence const& b) {
  BigInt result = 1;
  for (std::size_t k = 1; k <= b.length(); ++k) {
    result *= binomial(a.entry(k), b.entry(k));
    if (result == 0) break;
  }
  return result;
}

/// prod_k multinomial(a_k; parts[0]_k, ..., parts[m-1]_k).
inline BigInt seq_multinom(Sequence const& a, std::span<const Sequence> parts) {
  std::size_t len = a.length();
  for (auto const& p : parts) len = std::max(len, p.length());
  BigInt result = 1;
  std::vector<std::uint64_t> column(parts.size());
  for (std::size_t k = 1; k <= len; ++k) {
    for (std::size_t j = 0; j < parts.size(); ++j) column[j] = parts[j].entry(k);
    result *= multinomial(a.entry(k), column);
    if (result == 0) break;
  }
  return result;
}

namespace detail {

inline void partition_seqs_rec(std::uint64_t remaining, std::size_t k, std::uint64_t total,
                               std::vector<Sequence::value_type>& current,
                               std::vector<Sequence>& out) {
  if (remaining == 0) {
    out.emplace_back(current);
    return;
  }
  if (k > total) return;
  for (std::uint64_t count = remaining / k + 1; count-- > 0;) {
    current.push_back(static_cast<Sequence::value_type>(count));
    partition_seqs_rec(remaining - count * k, k + 1, total, current, out);
    current.pop_back();
  }
}

}  // namespace detail

/**
 * Every sequence s with Is = total, each exactly once, in descending
 * lexicographic order of (s_1, s_2, ...). There are p(total) of them.
 */
inline std::vector<Sequence> enumerate_partition_seqs(std::uint64_t total) {
  std::vector<Sequence> out;
  std::vector<Sequence::value_type> current;
  detail::partition_seqs_rec(total, 1, total, current, out);
  return out;
}

/// Every sequence s with s <= bound entrywise (includes the zero sequence and bound).
inline std::vector<Sequence> enumerate_subsequences(Sequence const& bound) {
  std::vector<Sequence> out{Sequence{}};
  for (std::size_t k = 1; k <= bound.length(); ++k) {
    std::vector<Sequence> next;
    for (auto const& s : out) {
      for (Sequence::value_type v = 0; v <= bound.entry(k); ++v) {
        Sequence t = s;
        t.set(k, v);
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Comma syntax: "0,1" is (0,1); "" and "0" are the zero sequence.
inline Sequence parse_sequence(std::string_view text) {
  std::vector<Sequence::value_type> entries;
  auto is_space = [](char c) { return c == ' ' || c == '\t'; };
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  if (text.empty()) return {};
  std::size_t pos = 0;
  while (true) {
    auto comma = text.find(',', pos);
    auto field = text.substr(pos, comma == std::string_view::npos ? text.size() - pos : comma - pos);
    while (!field.empty() && is_space(field.front())) field.remove_prefix(1);
    while (!field.empty() && is_space(field.back())) field.remove_suffix(1);
    Sequence::value_type v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc{} || ptr != field.data() + field.size())
      throw ParseError("invalid sequence entry '" + std::string(field) + "'");
    entries.push_back(v);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return Sequence(std::move(entries));
}

/// Inverse of parse_sequence; the zero sequence prints as "0".
inline std::string format_sequence(Sequence const& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (auto v : s.entries()) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, Sequence const& s) {
  return os << '(' << format_sequence(s) << ')';
}

}  // namespace tropcount

template <>
struct std::hash<tropcount::Sequence> {
  std::size_t operator()(tropcount::Sequence const& s) const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto v : s.entries()) h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
  }
};
