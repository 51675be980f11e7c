#include "narayana/compositions.hpp"

#include <charconv>
#include <numeric>
#include <sstream>
#include <utility>

namespace narayana {

Composition::Composition(std::vector<int> p)
    : parts(std::move(p)), colors(parts.size(), 1) {}

Composition::Composition(std::vector<int> p, std::vector<int> c)
    : parts(std::move(p)), colors(std::move(c)) {
  require(parts.size() == colors.size(), "one colour per part required");
}

int Composition::total() const { return std::accumulate(parts.begin(), parts.end(), 0); }

bool Composition::colored() const {
  for (int c : colors)
    if (c != 1) return true;
  return false;
}

std::string Composition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += '+';
    out += std::to_string(parts[i]);
    if (colors[i] != 1) out += '#' + std::to_string(colors[i]);
  }
  return out;
}

PartConstraint PartConstraint::finite_set(std::map<int, int> multiplicities) {
  require(!multiplicities.empty(), "finite part set must be nonempty");
  for (const auto& [part, mult] : multiplicities) {
    require(part >= 1, "parts must be positive");
    require(mult >= 1, "multiplicities must be >= 1");
  }
  PartConstraint c;
  c.kind_ = Kind::finite_set;
  c.set_ = std::move(multiplicities);
  return c;
}

PartConstraint PartConstraint::residue_set(int modulus, std::set<int> residues,
                                           std::set<int> excluded) {
  require(modulus >= 1, "modulus must be >= 1");
  std::set<int> reduced;
  for (int r : residues) reduced.insert(((r % modulus) + modulus) % modulus);
  require(!reduced.empty(), "residue set must be nonempty");
  PartConstraint c;
  c.kind_ = Kind::residue_set;
  c.modulus_ = modulus;
  c.residues_ = std::move(reduced);
  c.excluded_ = std::move(excluded);
  return c;
}

PartConstraint PartConstraint::at_least(int threshold) {
  require(threshold >= 1, "threshold must be >= 1");
  PartConstraint c;
  c.kind_ = Kind::at_least;
  c.threshold_ = threshold;
  return c;
}

namespace {

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw PreconditionError("bad integer '" + std::string(s) + "' in part constraint");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::set<int> parse_int_set(std::string_view s) {
  std::set<int> out;
  for (auto item : split(s, ',')) out.insert(parse_int(item));
  return out;
}

}  // namespace

PartConstraint PartConstraint::parse(std::string_view text) {
  std::set<int> excluded;
  if (auto bang = text.find('!'); bang != std::string_view::npos) {
    excluded = parse_int_set(text.substr(bang + 1));
    text = text.substr(0, bang);
  }
  auto fields = split(text, ':');
  PartConstraint c;
  if (fields[0] == "set" && fields.size() == 2) {
    std::map<int, int> mult;
    for (auto item : split(fields[1], ',')) {
      auto x = item.find('x');
      if (x == std::string_view::npos) {
        mult[parse_int(item)] += 1;
      } else {
        mult[parse_int(item.substr(0, x))] += parse_int(item.substr(x + 1));
      }
    }
    for (int e : excluded) mult.erase(e);
    c = finite_set(std::move(mult));
  } else if (fields[0] == "mod" && fields.size() == 3) {
    c = residue_set(parse_int(fields[1]), parse_int_set(fields[2]), std::move(excluded));
  } else if (fields[0] == "min" && fields.size() == 2) {
    c = at_least(parse_int(fields[1]));
    c.excluded_ = std::move(excluded);
  } else {
    throw PreconditionError("unrecognised part constraint '" + std::string(text) + "'");
  }
  return c;
}

int PartConstraint::multiplicity(int part) const {
  if (part < 1 || excluded_.contains(part)) return 0;
  switch (kind_) {
    case Kind::finite_set: {
      auto it = set_.find(part);
      return it == set_.end() ? 0 : it->second;
    }
    case Kind::residue_set:
      return residues_.contains(part % modulus_) ? 1 : 0;
    case Kind::at_least:
      return part >= threshold_ ? 1 : 0;
  }
  return 0;
}

std::string PartConstraint::to_string() const {
  std::ostringstream os;
  auto join = [&os](const auto& items, auto fmt) {
    bool first = true;
    for (const auto& it : items) {
      if (!first) os << ',';
      first = false;
      fmt(it);
    }
  };
  switch (kind_) {
    case Kind::finite_set:
      os << "set:";
      join(set_, [&os](const auto& kv) {
        os << kv.first;
        if (kv.second != 1) os << 'x' << kv.second;
      });
      break;
    case Kind::residue_set:
      os << "mod:" << modulus_ << ':';
      join(residues_, [&os](int r) { os << r; });
      break;
    case Kind::at_least:
      os << "min:" << threshold_;
      break;
  }
  if (!excluded_.empty()) {
    os << '!';
    join(excluded_, [&os](int e) { os << e; });
  }
  return os.str();
}

PartConstraint one_or_q(int q) {
  require(q >= 1, "q must be >= 1");
  if (q == 1) return PartConstraint::finite_set({{1, 2}});
  return PartConstraint::finite_set({{1, 1}, {q, 1}});
}

PartConstraint residue_mod(int q, int residue) {
  return PartConstraint::residue_set(q, {residue});
}

BigInt count_compositions(int n, const PartConstraint& c) {
  require(n >= 0, "count_compositions requires n >= 0");
  std::vector<int> mult(static_cast<std::size_t>(n) + 1, 0);
  for (int p = 1; p <= n; ++p) mult[static_cast<std::size_t>(p)] = c.multiplicity(p);
  std::vector<BigInt> ways(static_cast<std::size_t>(n) + 1, 0);
  ways[0] = 1;
  for (int m = 1; m <= n; ++m) {
    BigInt acc = 0;
    for (int p = 1; p <= m; ++p) {
      const int k = mult[static_cast<std::size_t>(p)];
      if (k) acc += k * ways[static_cast<std::size_t>(m - p)];
    }
    ways[static_cast<std::size_t>(m)] = std::move(acc);
  }
  return ways[static_cast<std::size_t>(n)];
}

namespace {

void enumerate_rec(int remaining, const PartConstraint& c, const std::vector<int>& mult,
                   Composition& prefix, std::vector<Composition>& out) {
  if (remaining == 0) {
    out.push_back(prefix);
    return;
  }
  for (int p = 1; p <= remaining; ++p) {
    for (int color = 1; color <= mult[static_cast<std::size_t>(p)]; ++color) {
      prefix.parts.push_back(p);
      prefix.colors.push_back(color);
      enumerate_rec(remaining - p, c, mult, prefix, out);
      prefix.parts.pop_back();
      prefix.colors.pop_back();
    }
  }
}

}  // namespace

std::vector<Composition> enumerate_compositions(int n, const PartConstraint& c, int bound) {
  require(n >= 0, "enumerate_compositions requires n >= 0");
  if (n > bound) {
    throw BudgetError("enumeration bound exceeded: n = " + std::to_string(n) + " > " +
                      std::to_string(bound));
  }
  std::vector<int> mult(static_cast<std::size_t>(n) + 1, 0);
  for (int p = 1; p <= n; ++p) mult[static_cast<std::size_t>(p)] = c.multiplicity(p);
  std::vector<Composition> out;
  if (n == 0) return out;
  Composition prefix;
  enumerate_rec(n, c, mult, prefix, out);
  return out;
}

BitSequence BitSequence::parse(std::string_view text) {
  BitSequence b;
  for (char ch : text) {
    if (ch == ' ') continue;
    require(ch == '0' || ch == '1', "bit sequences contain only 0 and 1");
    b.bits.push_back(ch == '1');
  }
  return b;
}

std::string BitSequence::to_string() const {
  std::string s;
  for (bool b : bits) s += b ? '1' : '0';
  return s;
}

BitSequence macmahon_sequence(const Composition& p) {
  require(!p.empty(), "MacMahon sequence of an empty composition");
  BitSequence out;
  for (std::size_t i = 0; i < p.parts.size(); ++i) {
    require(p.parts[i] >= 1, "parts must be positive");
    out.bits.insert(out.bits.end(), static_cast<std::size_t>(p.parts[i] - 1), false);
    if (i + 1 < p.parts.size()) out.bits.push_back(true);
  }
  return out;
}

Composition macmahon_inverse(const BitSequence& bits) {
  std::vector<int> parts;
  int run = 1;
  for (bool b : bits.bits) {
    if (b) {
      parts.push_back(run);
      run = 1;
    } else {
      ++run;
    }
  }
  parts.push_back(run);
  return Composition(std::move(parts));
}

Composition conjugate(const Composition& p) {
  require(!p.colored(), "conjugation is defined for uncoloured compositions");
  BitSequence m = macmahon_sequence(p);
  m.bits.flip();
  return macmahon_inverse(m);
}

Composition sills_map(int q, const Composition& p) {
  require(q >= 2, "sills_map requires q >= 2");
  require(!p.empty(), "sills_map requires a nonempty composition");
  for (int part : p.parts)
    require(part % q == 1, "part " + std::to_string(part) + " is not 1 mod " + std::to_string(q));
  const Composition pc = conjugate(p);
  // pc = (q_1, 1^{q-1}, q_2, 1^{q-1}, ..., q_r, 1^{q-1}, q_{r+1})
  if (pc.parts.size() % static_cast<std::size_t>(q) != 1)
    throw std::logic_error("conjugate of a 1 (mod q) composition has unexpected shape");
  std::vector<int> image;
  for (std::size_t i = 0; i < pc.parts.size(); ++i) {
    if (i % static_cast<std::size_t>(q) == 0) {
      image.push_back(pc.parts[i] + q - 1);
    } else if (pc.parts[i] != 1) {
      throw std::logic_error("conjugate of a 1 (mod q) composition has unexpected shape");
    }
  }
  return Composition(std::move(image));
}

Composition sills_inverse(int q, const Composition& image) {
  require(q >= 2, "sills_inverse requires q >= 2");
  require(!image.empty(), "sills_inverse requires a nonempty composition");
  require(!image.colored(), "sills_inverse requires an uncoloured composition");
  std::vector<int> pc;
  for (std::size_t i = 0; i < image.parts.size(); ++i) {
    require(image.parts[i] >= q,
            "part " + std::to_string(image.parts[i]) + " is below " + std::to_string(q));
    if (i) pc.insert(pc.end(), static_cast<std::size_t>(q - 1), 1);
    pc.push_back(image.parts[i] - (q - 1));
  }
  return conjugate(Composition(std::move(pc)));
}

}  // namespace narayana
