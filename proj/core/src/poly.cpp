#include "polytree/poly.hpp"

#include "polytree/index.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace polytree {

namespace {

std::string pos_path(std::size_t i) { return "positions[" + std::to_string(i) + "]"; }

}  // namespace

PolyCode::PolyCode(std::vector<PositionEntry> entries)
    : positions_(std::make_shared<const std::vector<PositionEntry>>(std::move(entries))) {
  validate(*this);
}

const std::vector<PositionEntry>& PolyCode::positions() const {
  static const std::vector<PositionEntry> empty;
  return positions_ ? *positions_ : empty;
}

PolyCode PolyCode::from_dirs(std::vector<std::size_t> dir_counts) {
  std::vector<PositionEntry> entries;
  entries.reserve(dir_counts.size());
  for (std::size_t d : dir_counts) entries.push_back(PositionEntry{std::nullopt, d, std::nullopt});
  return PolyCode(std::move(entries));
}

PolyCode PolyCode::constant(std::size_t n) {
  return from_dirs(std::vector<std::size_t>(n, 0));
}

PolyCode PolyCode::monomial(std::size_t coeff, std::size_t exponent) {
  return from_dirs(std::vector<std::size_t>(coeff, exponent));
}

std::size_t PolyCode::total_dirs() const {
  std::size_t n = 0;
  for (const auto& e : positions()) n += e.dirs;
  return n;
}

bool PolyCode::same_shape(const PolyCode& other) const {
  if (positions_ == other.positions_) return true;
  if (size() != other.size()) return false;
  for (std::size_t i = 0; i < size(); ++i) {
    if (dirs(i) != other.dirs(i)) return false;
  }
  return true;
}

std::string PolyCode::describe() const {
  if (size() == 0) return "0";
  std::map<std::size_t, std::size_t, std::greater<>> coeff;
  for (const auto& e : positions()) ++coeff[e.dirs];
  std::ostringstream out;
  bool first = true;
  for (const auto& [exp, c] : coeff) {
    if (!first) out << " + ";
    first = false;
    if (exp == 0) {
      out << c;
    } else {
      if (c != 1) out << c;
      out << (exp == 1 ? "y" : "y^" + std::to_string(exp));
    }
  }
  return out.str();
}

void validate(const PolyCode& p) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& entry = p.at(i);
    if (entry.label) {
      if (!seen.insert(*entry.label).second) {
        throw ValidateError("duplicate position label \"" + *entry.label + "\"", pos_path(i));
      }
    }
    if (entry.dir_labels) {
      if (entry.dir_labels->size() != entry.dirs) {
        throw ValidateError("dirLabels length " + std::to_string(entry.dir_labels->size()) +
                                " does not match dirs " + std::to_string(entry.dirs),
                            pos_path(i));
      }
      std::set<std::string> dl(entry.dir_labels->begin(), entry.dir_labels->end());
      if (dl.size() != entry.dir_labels->size()) {
        throw ValidateError("duplicate direction label", pos_path(i));
      }
    }
  }
}

UniverseCode code_of(const PolyCode& p) {
  UniverseCode c;
  c.position_count = p.size();
  c.dir_counts.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) c.dir_counts.push_back(p.dirs(i));
  return c;
}

PolyCode realize(const UniverseCode& code) {
  if (code.dir_counts.size() != code.position_count) {
    throw ValidateError("code direction list length " + std::to_string(code.dir_counts.size()) +
                        " does not match position count " + std::to_string(code.position_count));
  }
  return PolyCode::from_dirs(code.dir_counts);
}

PolyMap::PolyMap(PolyCode source, PolyCode target, std::vector<std::size_t> on_pos,
                 std::vector<std::vector<std::size_t>> on_dir)
    : source_(std::move(source)),
      target_(std::move(target)),
      on_pos_(std::move(on_pos)),
      on_dir_(std::move(on_dir)) {
  if (on_pos_.size() != source_.size() || on_dir_.size() != source_.size()) {
    throw ValidateError("map tables must have one entry per source position");
  }
  for (std::size_t i = 0; i < source_.size(); ++i) {
    if (on_pos_[i] >= target_.size()) {
      throw ValidateError("onPos out of range", "onPos[" + std::to_string(i) + "]");
    }
    if (on_dir_[i].size() != target_.dirs(on_pos_[i])) {
      throw ValidateError("onDir row must cover the target's directions at the image position",
                          "onDir[" + std::to_string(i) + "]");
    }
    for (std::size_t e = 0; e < on_dir_[i].size(); ++e) {
      if (on_dir_[i][e] >= source_.dirs(i)) {
        throw ValidateError("onDir out of range",
                            "onDir[" + std::to_string(i) + "][" + std::to_string(e) + "]");
      }
    }
  }
}

PolyMap identity_poly_map(const PolyCode& p) {
  std::vector<std::size_t> on_pos(p.size());
  std::vector<std::vector<std::size_t>> on_dir(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    on_pos[i] = i;
    on_dir[i].resize(p.dirs(i));
    for (std::size_t e = 0; e < p.dirs(i); ++e) on_dir[i][e] = e;
  }
  return PolyMap(p, p, std::move(on_pos), std::move(on_dir));
}

PolyMap compose_poly_maps(const PolyMap& first, const PolyMap& second) {
  if (!first.target().same_shape(second.source())) {
    throw ValidateError("compose: middle polynomials differ (" + first.target().describe() +
                        " vs " + second.source().describe() + ")");
  }
  const PolyCode& p = first.source();
  std::vector<std::size_t> on_pos(p.size());
  std::vector<std::vector<std::size_t>> on_dir(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::size_t j = first.on_pos(i);
    std::size_t k = second.on_pos(j);
    on_pos[i] = k;
    std::size_t nf = second.target().dirs(k);
    on_dir[i].resize(nf);
    for (std::size_t f = 0; f < nf; ++f) {
      on_dir[i][f] = first.on_dir(i, second.on_dir(j, f));
    }
  }
  return PolyMap(p, second.target(), std::move(on_pos), std::move(on_dir));
}

bool is_cartesian(const PolyMap& f) {
  for (std::size_t i = 0; i < f.source().size(); ++i) {
    std::size_t n_src = f.source().dirs(i);
    std::size_t n_tgt = f.target().dirs(f.on_pos(i));
    if (n_src != n_tgt) return false;
    std::vector<bool> hit(n_src, false);
    for (std::size_t e = 0; e < n_tgt; ++e) {
      std::size_t d = f.on_dir(i, e);
      if (hit[d]) return false;
      hit[d] = true;
    }
  }
  return true;
}

Count poly_map_count(const PolyCode& p, const PolyCode& q) {
  Count total = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    Count per_position = 0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      per_position += pow_count(Count(p.dirs(i)), q.dirs(j));
    }
    total *= per_position;
  }
  return total;
}

void for_each_map(const PolyCode& p, const PolyCode& q,
                  const std::function<bool(const PolyMap&)>& visit, const Budget& budget) {
  Count total = poly_map_count(p, q);
  budget.check("enumerate maps " + p.describe() + " -> " + q.describe(), total);
  if (total == 0) return;

  const std::size_t n = p.size();

  // Valid images per source position. A target position with directions is
  // a valid image only when the source position has directions to map them
  // to, otherwise the block is empty.
  std::vector<std::vector<std::size_t>> valid(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      if (p.dirs(i) > 0 || q.dirs(j) == 0) valid[i].push_back(j);
    }
    if (valid[i].empty()) return;
  }

  std::vector<std::size_t> vradix(n);
  for (std::size_t i = 0; i < n; ++i) vradix[i] = valid[i].size();
  std::vector<std::size_t> vidx(n, 0);
  std::vector<std::size_t> on_pos(n, 0);

  while (true) {
    for (std::size_t i = 0; i < n; ++i) on_pos[i] = valid[i][vidx[i]];

    // All on_dir tables for this on_pos block, in lex order (last digit
    // fastest over the flattened (i, e) slots).
    std::vector<std::vector<std::size_t>> on_dir(n);
    std::vector<std::size_t> radices;
    for (std::size_t i = 0; i < n; ++i) {
      on_dir[i].assign(q.dirs(on_pos[i]), 0);
      radices.insert(radices.end(), on_dir[i].size(), p.dirs(i));
    }
    std::vector<std::size_t> digits(radices.size(), 0);
    while (true) {
      std::size_t k = 0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t e = 0; e < on_dir[i].size(); ++e) on_dir[i][e] = digits[k++];
      }
      if (!visit(PolyMap(p, q, on_pos, on_dir))) return;
      if (digits.empty() || !mixed_radix_next(radices, digits)) break;
    }

    if (vidx.empty() || !mixed_radix_next(vradix, vidx)) return;
  }
}

std::vector<PolyMap> enumerate_maps(const PolyCode& p, const PolyCode& q, const Budget& budget) {
  std::vector<PolyMap> out;
  for_each_map(
      p, q,
      [&](const PolyMap& f) {
        out.push_back(f);
        return true;
      },
      budget);
  return out;
}

Count poly_map_rank(const PolyMap& f) {
  const PolyCode& p = f.source();
  const PolyCode& q = f.target();
  const std::size_t n = p.size();

  std::vector<std::vector<Count>> weight(n);  // weight[i][j] = p[i]^q[j]
  std::vector<Count> total(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    weight[i].resize(q.size());
    for (std::size_t j = 0; j < q.size(); ++j) {
      weight[i][j] = pow_count(Count(p.dirs(i)), q.dirs(j));
      total[i] += weight[i][j];
    }
  }

  Count rank = 0;
  Count prefix = 1;  // product of weight[u][on_pos(u)] for u < t
  for (std::size_t t = 0; t < n; ++t) {
    Count below = 0;
    for (std::size_t j = 0; j < f.on_pos(t); ++j) below += weight[t][j];
    Count suffix = 1;
    for (std::size_t u = t + 1; u < n; ++u) suffix *= total[u];
    rank += prefix * below * suffix;
    prefix *= weight[t][f.on_pos(t)];
  }

  // Rank within the block: the on_dir digits, last fastest.
  Count within = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < f.on_dir_table()[i].size(); ++e) {
      within = within * Count(p.dirs(i)) + Count(f.on_dir(i, e));
    }
  }
  return rank + within;
}

PolyMap poly_map_at_rank(const PolyCode& p, const PolyCode& q, const Count& rank) {
  const std::size_t n = p.size();
  Count remaining = rank;

  std::vector<std::vector<Count>> weight(n);
  std::vector<Count> total(n, 1);
  for (std::size_t i = 0; i < n; ++i) {
    weight[i].resize(q.size());
    total[i] = 0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      weight[i][j] = pow_count(Count(p.dirs(i)), q.dirs(j));
      total[i] += weight[i][j];
    }
  }

  std::vector<std::size_t> on_pos(n, 0);
  Count prefix = 1;  // product of the chosen weights so far
  for (std::size_t t = 0; t < n; ++t) {
    Count suffix = 1;
    for (std::size_t u = t + 1; u < n; ++u) suffix *= total[u];
    std::size_t j = 0;
    while (j < q.size()) {
      Count block = prefix * weight[t][j] * suffix;
      if (remaining < block) break;
      remaining -= block;
      ++j;
    }
    if (j >= q.size()) throw ValidateError("map rank out of range");
    on_pos[t] = j;
    prefix *= weight[t][j];
  }

  std::vector<std::size_t> radices;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < q.dirs(on_pos[i]); ++e) radices.push_back(p.dirs(i));
  }
  std::vector<Count> place(radices.size(), 1);
  for (std::size_t k = radices.size(); k-- > 0;) {
    if (k + 1 < radices.size()) place[k] = place[k + 1] * Count(radices[k + 1]);
  }
  std::vector<std::vector<std::size_t>> on_dir(n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    on_dir[i].resize(q.dirs(on_pos[i]));
    for (std::size_t e = 0; e < on_dir[i].size(); ++e, ++k) {
      Count digit = radices[k] ? remaining / place[k] : Count(0);
      on_dir[i][e] = to_size_t(digit);
      remaining -= digit * place[k];
    }
  }
  return PolyMap(p, q, std::move(on_pos), std::move(on_dir));
}

namespace {

// Position labels survive a sum only when they stay unique in the result.
std::vector<PositionEntry> concat_entries(std::span<const PolyCode> ps) {
  std::vector<PositionEntry> entries;
  std::set<std::string> labels;
  bool keep_labels = true;
  for (const auto& p : ps) {
    for (const auto& e : p.positions()) {
      if (e.label && !labels.insert(*e.label).second) keep_labels = false;
      entries.push_back(e);
    }
  }
  if (!keep_labels) {
    for (auto& e : entries) e.label.reset();
  }
  return entries;
}

}  // namespace

PolyCode sum_poly(std::span<const PolyCode> ps, const Budget& budget) {
  Count positions = 0;
  Count dirs = 0;
  for (const auto& p : ps) {
    positions += Count(p.size());
    dirs += Count(p.total_dirs());
  }
  budget.check("sum", positions);
  budget.check("sum directions", dirs);
  return PolyCode(concat_entries(ps));
}

PolyCode sum_poly(const PolyCode& p, const PolyCode& q, const Budget& budget) {
  const PolyCode ps[] = {p, q};
  return sum_poly(std::span<const PolyCode>(ps, 2), budget);
}

PolyCode prod_poly(std::span<const PolyCode> ps, const Budget& budget) {
  Count positions = 1;
  for (const auto& p : ps) positions *= Count(p.size());
  budget.check("product", positions);

  std::vector<std::size_t> radices;
  radices.reserve(ps.size());
  for (const auto& p : ps) radices.push_back(p.size());

  std::vector<std::size_t> dir_counts;
  if (positions > 0) {
    Count total_dirs = 0;
    std::vector<std::size_t> tuple(ps.size(), 0);
    dir_counts.reserve(to_size_t(positions));
    while (true) {
      std::size_t d = 0;
      for (std::size_t k = 0; k < ps.size(); ++k) d += ps[k].dirs(tuple[k]);
      dir_counts.push_back(d);
      total_dirs += Count(d);
      budget.check("product directions", total_dirs);
      if (!mixed_radix_next(radices, tuple)) break;
    }
  }
  return PolyCode::from_dirs(std::move(dir_counts));
}

PolyCode prod_poly(const PolyCode& p, const PolyCode& q, const Budget& budget) {
  const PolyCode ps[] = {p, q};
  return prod_poly(std::span<const PolyCode>(ps, 2), budget);
}

PolyCode tensor_poly(const PolyCode& p, const PolyCode& q, const Budget& budget) {
  Count positions = Count(p.size()) * Count(q.size());
  budget.check("tensor", positions);
  Count total_dirs = 0;
  std::vector<std::size_t> dir_counts;
  dir_counts.reserve(p.size() * q.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      dir_counts.push_back(p.dirs(i) * q.dirs(j));
      total_dirs += Count(p.dirs(i)) * Count(q.dirs(j));
      budget.check("tensor directions", total_dirs);
    }
  }
  return PolyCode::from_dirs(std::move(dir_counts));
}

PolyCode subst_poly(const PolyCode& p, const PolyCode& q, const Budget& budget) {
  Count positions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    positions += pow_count(Count(q.size()), p.dirs(i));
  }
  budget.check("substitution", positions);

  std::vector<std::size_t> dir_counts;
  Count total_dirs = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::vector<std::size_t> radices(p.dirs(i), q.size());
    if (q.size() == 0 && p.dirs(i) > 0) continue;  // no assignments
    std::vector<std::size_t> assign(p.dirs(i), 0);
    while (true) {
      std::size_t d = 0;
      for (std::size_t k = 0; k < assign.size(); ++k) d += q.dirs(assign[k]);
      dir_counts.push_back(d);
      total_dirs += Count(d);
      budget.check("substitution directions", total_dirs);
      if (assign.empty() || !mixed_radix_next(radices, assign)) break;
    }
  }
  return PolyCode::from_dirs(std::move(dir_counts));
}

std::size_t ihom_dir_count(const PolyMap& f) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < f.source().size(); ++i) n += f.target().dirs(f.on_pos(i));
  return n;
}

PolyCode ihom_poly(const PolyCode& p, const PolyCode& q, const Budget& budget) {
  Count positions = poly_map_count(p, q);
  budget.check("internal hom " + p.describe() + " -> " + q.describe(), positions);
  std::vector<std::size_t> dir_counts;
  dir_counts.reserve(to_size_t(positions));
  Count total_dirs = 0;
  for_each_map(
      p, q,
      [&](const PolyMap& f) {
        std::size_t d = ihom_dir_count(f);
        dir_counts.push_back(d);
        total_dirs += Count(d);
        budget.check("internal hom directions", total_dirs);
        return true;
      },
      Budget{std::numeric_limits<std::uint64_t>::max()});
  return PolyCode::from_dirs(std::move(dir_counts));
}

PolyMap ihom_position_map(const PolyCode& p, const PolyCode& q, std::size_t k) {
  return poly_map_at_rank(p, q, Count(k));
}

std::size_t ihom_dir_flat(const PolyMap& f, std::size_t i, std::size_t e) {
  std::size_t flat = 0;
  for (std::size_t u = 0; u < i; ++u) flat += f.target().dirs(f.on_pos(u));
  return flat + e;
}

std::pair<std::size_t, std::size_t> ihom_dir_unflat(const PolyMap& f, std::size_t flat) {
  for (std::size_t i = 0; i < f.source().size(); ++i) {
    std::size_t block = f.target().dirs(f.on_pos(i));
    if (flat < block) return {i, flat};
    flat -= block;
  }
  throw ValidateError("internal hom direction index out of range");
}

std::size_t tensor_pos_flat(const PolyCode&, const PolyCode& q, std::size_t i, std::size_t j) {
  return i * q.size() + j;
}

std::pair<std::size_t, std::size_t> tensor_pos_unflat(const PolyCode&, const PolyCode& q,
                                                      std::size_t flat) {
  return {flat / q.size(), flat % q.size()};
}

std::size_t tensor_dir_flat(const PolyCode&, const PolyCode& q, std::size_t, std::size_t j,
                            std::size_t d, std::size_t e) {
  return d * q.dirs(j) + e;
}

std::pair<std::size_t, std::size_t> tensor_dir_unflat(const PolyCode&, const PolyCode& q,
                                                      std::size_t, std::size_t j,
                                                      std::size_t flat) {
  return {flat / q.dirs(j), flat % q.dirs(j)};
}

PolyMap tensor_map(const PolyMap& f, const PolyMap& g) {
  const PolyCode& p = f.source();
  const PolyCode& p2 = g.source();
  const PolyCode& q = f.target();
  const PolyCode& q2 = g.target();
  PolyCode source = tensor_poly(p, p2, Budget{std::numeric_limits<std::uint64_t>::max()});
  PolyCode target = tensor_poly(q, q2, Budget{std::numeric_limits<std::uint64_t>::max()});

  std::vector<std::size_t> on_pos(source.size());
  std::vector<std::vector<std::size_t>> on_dir(source.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t i2 = 0; i2 < p2.size(); ++i2) {
      std::size_t s = tensor_pos_flat(p, p2, i, i2);
      std::size_t j = f.on_pos(i);
      std::size_t j2 = g.on_pos(i2);
      on_pos[s] = tensor_pos_flat(q, q2, j, j2);
      on_dir[s].resize(q.dirs(j) * q2.dirs(j2));
      for (std::size_t e = 0; e < q.dirs(j); ++e) {
        for (std::size_t e2 = 0; e2 < q2.dirs(j2); ++e2) {
          on_dir[s][tensor_dir_flat(q, q2, j, j2, e, e2)] =
              tensor_dir_flat(p, p2, i, i2, f.on_dir(i, e), g.on_dir(i2, e2));
        }
      }
    }
  }
  return PolyMap(std::move(source), std::move(target), std::move(on_pos), std::move(on_dir));
}

PolyMap copair_map(const PolyMap& f, const PolyMap& g) {
  if (!f.target().same_shape(g.target())) {
    throw ValidateError("copair: targets differ");
  }
  PolyCode source = sum_poly(f.source(), g.source());
  std::vector<std::size_t> on_pos = f.on_pos_table();
  on_pos.insert(on_pos.end(), g.on_pos_table().begin(), g.on_pos_table().end());
  std::vector<std::vector<std::size_t>> on_dir = f.on_dir_table();
  on_dir.insert(on_dir.end(), g.on_dir_table().begin(), g.on_dir_table().end());
  return PolyMap(std::move(source), f.target(), std::move(on_pos), std::move(on_dir));
}

PolyMap injection_map(const PolyCode& p, const PolyCode& q, std::size_t which) {
  PolyCode target = sum_poly(p, q);
  const PolyCode& src = which == 0 ? p : q;
  std::size_t offset = which == 0 ? 0 : p.size();
  std::vector<std::size_t> on_pos(src.size());
  std::vector<std::vector<std::size_t>> on_dir(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    on_pos[i] = offset + i;
    on_dir[i].resize(src.dirs(i));
    for (std::size_t e = 0; e < src.dirs(i); ++e) on_dir[i][e] = e;
  }
  return PolyMap(src, std::move(target), std::move(on_pos), std::move(on_dir));
}

PolyMap braid_map(const PolyCode& p, const PolyCode& q) {
  Budget unbounded{std::numeric_limits<std::uint64_t>::max()};
  PolyCode source = tensor_poly(p, q, unbounded);
  PolyCode target = tensor_poly(q, p, unbounded);
  std::vector<std::size_t> on_pos(source.size());
  std::vector<std::vector<std::size_t>> on_dir(source.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < q.size(); ++j) {
      std::size_t s = tensor_pos_flat(p, q, i, j);
      on_pos[s] = tensor_pos_flat(q, p, j, i);
      on_dir[s].resize(p.dirs(i) * q.dirs(j));
      for (std::size_t e = 0; e < q.dirs(j); ++e) {
        for (std::size_t d = 0; d < p.dirs(i); ++d) {
          on_dir[s][tensor_dir_flat(q, p, j, i, e, d)] = tensor_dir_flat(p, q, i, j, d, e);
        }
      }
    }
  }
  return PolyMap(std::move(source), std::move(target), std::move(on_pos), std::move(on_dir));
}

namespace {

PolyMap index_identity(PolyCode source, PolyCode target) {
  // The two codes have equal position counts and matching direction counts
  // in the canonical flat layout; the map is the identity permutation.
  std::vector<std::size_t> on_pos(source.size());
  std::vector<std::vector<std::size_t>> on_dir(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) {
    on_pos[i] = i;
    on_dir[i].resize(source.dirs(i));
    for (std::size_t e = 0; e < source.dirs(i); ++e) on_dir[i][e] = e;
  }
  return PolyMap(std::move(source), std::move(target), std::move(on_pos), std::move(on_dir));
}

const Budget kUnbounded{std::numeric_limits<std::uint64_t>::max()};

}  // namespace

PolyMap assoc_map(const PolyCode& p, const PolyCode& q, const PolyCode& r) {
  return index_identity(tensor_poly(tensor_poly(p, q, kUnbounded), r, kUnbounded),
                        tensor_poly(p, tensor_poly(q, r, kUnbounded), kUnbounded));
}

PolyMap assoc_inv_map(const PolyCode& p, const PolyCode& q, const PolyCode& r) {
  return index_identity(tensor_poly(p, tensor_poly(q, r, kUnbounded), kUnbounded),
                        tensor_poly(tensor_poly(p, q, kUnbounded), r, kUnbounded));
}

PolyMap left_unit_map(const PolyCode& p) {
  return index_identity(tensor_poly(PolyCode::y(), p, kUnbounded), p);
}

PolyMap left_unit_inv_map(const PolyCode& p) {
  return index_identity(p, tensor_poly(PolyCode::y(), p, kUnbounded));
}

PolyMap right_unit_map(const PolyCode& p) {
  return index_identity(tensor_poly(p, PolyCode::y(), kUnbounded), p);
}

PolyMap right_unit_inv_map(const PolyCode& p) {
  return index_identity(p, tensor_poly(p, PolyCode::y(), kUnbounded));
}

PolyMap distrib_map(const PolyCode& p, const PolyCode& q, const PolyCode& r) {
  PolyCode source = tensor_poly(p, sum_poly(q, r, kUnbounded), kUnbounded);
  PolyCode target =
      sum_poly(tensor_poly(p, q, kUnbounded), tensor_poly(p, r, kUnbounded), kUnbounded);
  std::size_t nq = q.size();
  std::size_t nr = r.size();
  std::vector<std::size_t> on_pos(source.size());
  std::vector<std::vector<std::size_t>> on_dir(source.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t s = 0; s < nq + nr; ++s) {
      std::size_t src = i * (nq + nr) + s;
      on_pos[src] = s < nq ? i * nq + s : p.size() * nq + i * nr + (s - nq);
      std::size_t d = source.dirs(src);
      on_dir[src].resize(d);
      for (std::size_t e = 0; e < d; ++e) on_dir[src][e] = e;
    }
  }
  return PolyMap(std::move(source), std::move(target), std::move(on_pos), std::move(on_dir));
}

PolyMap distrib_inv_map(const PolyCode& p, const PolyCode& q, const PolyCode& r) {
  PolyCode source =
      sum_poly(tensor_poly(p, q, kUnbounded), tensor_poly(p, r, kUnbounded), kUnbounded);
  PolyCode target = tensor_poly(p, sum_poly(q, r, kUnbounded), kUnbounded);
  std::size_t nq = q.size();
  std::size_t nr = r.size();
  std::vector<std::size_t> on_pos(source.size());
  std::vector<std::vector<std::size_t>> on_dir(source.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < nq; ++j) {
      std::size_t src = i * nq + j;
      on_pos[src] = i * (nq + nr) + j;
      on_dir[src].resize(source.dirs(src));
      for (std::size_t e = 0; e < on_dir[src].size(); ++e) on_dir[src][e] = e;
    }
    for (std::size_t k = 0; k < nr; ++k) {
      std::size_t src = p.size() * nq + i * nr + k;
      on_pos[src] = i * (nq + nr) + nq + k;
      on_dir[src].resize(source.dirs(src));
      for (std::size_t e = 0; e < on_dir[src].size(); ++e) on_dir[src][e] = e;
    }
  }
  return PolyMap(std::move(source), std::move(target), std::move(on_pos), std::move(on_dir));
}

}  // namespace polytree
