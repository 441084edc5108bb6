#include "qk/knot.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "qk/errors.hpp"

namespace qk {

namespace {

struct Token {
  bool over;
  std::uint32_t label;
  int sign;
};

Token parse_token(std::string_view t) {
  if (t.size() < 3) throw MalformedCode("bad Gauss token '" + std::string(t) + "'");
  Token tok{};
  const char kind = static_cast<char>(std::toupper(static_cast<unsigned char>(t.front())));
  if (kind != 'O' && kind != 'U') throw MalformedCode("Gauss token must start with O or U: '" + std::string(t) + "'");
  tok.over = kind == 'O';
  const char sign = t.back();
  if (sign != '+' && sign != '-') throw MalformedCode("Gauss token must end with + or -: '" + std::string(t) + "'");
  tok.sign = sign == '+' ? 1 : -1;
  const std::string_view digits = t.substr(1, t.size() - 2);
  std::uint64_t v = 0;
  for (char ch : digits) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) {
      throw MalformedCode("bad crossing label in '" + std::string(t) + "'");
    }
    v = v * 10 + static_cast<std::uint64_t>(ch - '0');
    if (v > 1'000'000) throw MalformedCode("crossing label too large in '" + std::string(t) + "'");
  }
  tok.label = static_cast<std::uint32_t>(v);
  return tok;
}

}  // namespace

KnotDiagram parse_gauss(std::string_view code) {
  std::vector<std::string> words;
  std::string cur;
  for (char ch : code) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',') {
      if (!cur.empty()) words.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) words.push_back(std::move(cur));
  if (words.empty()) throw MalformedCode("empty Gauss code");
  if (words.size() == 1 && (words[0] == "unknot" || words[0] == "UNKNOT")) return KnotDiagram{};

  std::vector<Token> toks;
  for (const auto& w : words) toks.push_back(parse_token(w));

  struct Seen {
    std::optional<std::size_t> over, under;
    int sign = 0;
  };
  std::map<std::uint32_t, Seen> seen;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    Seen& s = seen[toks[i].label];
    auto& slot = toks[i].over ? s.over : s.under;
    if (slot) {
      throw MalformedCode("crossing " + std::to_string(toks[i].label) + " has two " +
                          (toks[i].over ? "over" : "under") + " passages");
    }
    slot = i;
    if (s.sign != 0 && s.sign != toks[i].sign) {
      throw InconsistentSigns("crossing " + std::to_string(toks[i].label) + " has both signs");
    }
    s.sign = toks[i].sign;
  }
  for (const auto& [label, s] : seen) {
    if (!s.over || !s.under) throw MalformedCode("crossing " + std::to_string(label) + " needs one O and one U");
  }

  // Arc i starts at the i-th under-passage.
  std::vector<std::size_t> under_pos;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (!toks[i].over) under_pos.push_back(i);
  }
  const std::size_t k = under_pos.size();
  std::vector<std::uint32_t> arc_at(toks.size());
  for (std::size_t i = 0; i < toks.size(); ++i) {
    auto it = std::upper_bound(under_pos.begin(), under_pos.end(), i);
    arc_at[i] = it == under_pos.begin() ? static_cast<std::uint32_t>(k - 1)
                                        : static_cast<std::uint32_t>(it - under_pos.begin() - 1);
  }
  KnotDiagram d;
  d.arcs = k;
  for (std::size_t i = 0; i < k; ++i) {
    const Token& t = toks[under_pos[i]];
    const Seen& s = seen[t.label];
    d.crossings.push_back(Crossing{t.label, arc_at[*s.over], static_cast<std::uint32_t>((i + k - 1) % k),
                                   static_cast<std::uint32_t>(i), t.sign});
  }
  return d;
}

std::string to_gauss(const KnotDiagram& k) {
  if (k.crossings.empty()) return "unknot";
  // Each under-passage is followed by the over passages on the arc it
  // starts. Their order along the arc is not recorded, so label order it is.
  std::vector<std::vector<const Crossing*>> over_on(k.arcs);
  for (const auto& c : k.crossings) over_on[c.over].push_back(&c);
  auto token = [](char kind, const Crossing& c) {
    return std::string(1, kind) + std::to_string(c.label) + (c.sign > 0 ? "+" : "-");
  };
  std::string out;
  const std::size_t n = k.crossings.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Crossing& c = k.crossings[i];
    if (!out.empty()) out += ' ';
    out += token('U', c);
    for (const Crossing* o : over_on[c.out]) out += ' ' + token('O', *o);
  }
  return out;
}

KnotDiagram rotate(const KnotDiagram& k, std::size_t steps) {
  const std::size_t n = k.crossings.size();
  if (n == 0) return k;
  steps %= n;
  auto renumber = [&](std::uint32_t arc) { return static_cast<std::uint32_t>((arc + n - steps) % n); };
  KnotDiagram r;
  r.arcs = k.arcs;
  for (std::size_t i = 0; i < n; ++i) {
    Crossing c = k.crossings[(i + steps) % n];
    c.over = renumber(c.over);
    c.in = renumber(c.in);
    c.out = renumber(c.out);
    r.crossings.push_back(c);
  }
  return r;
}

KnotDiagram mirror(const KnotDiagram& k) {
  KnotDiagram m = k;
  for (auto& c : m.crossings) c.sign = -c.sign;
  return m;
}

namespace {

int effective_sign(const Crossing& c, CrossingConvention conv) {
  return conv == CrossingConvention::Standard ? c.sign : -c.sign;
}

}  // namespace

bool is_coloring(const KnotDiagram& k, const Quandle& x, const Coloring& col, CrossingConvention conv) {
  if (col.size() != k.arcs) return false;
  for (Elem v : col) {
    if (v >= x.size()) return false;
  }
  for (const auto& c : k.crossings) {
    const Elem want = effective_sign(c, conv) > 0 ? x.op(col[c.over], col[c.in]) : x.left_divide(col[c.over], col[c.in]);
    if (col[c.out] != want) return false;
  }
  return true;
}

namespace {

constexpr Elem kUnset = ~Elem{0};

class ColoringSearch {
 public:
  ColoringSearch(const KnotDiagram& k, const Quandle& x, CrossingConvention conv) : k_(k), x_(x), conv_(conv) {}

  std::vector<Coloring> run() {
    Coloring col(k_.arcs, kUnset);
    dfs(col);
    std::sort(out_.begin(), out_.end());
    return std::move(out_);
  }

 private:
  // Fills every arc forced by a crossing with two known arcs; false on a
  // contradiction.
  bool propagate(Coloring& col) const {
    for (bool changed = true; changed;) {
      changed = false;
      for (const auto& c : k_.crossings) {
        const Elem y = col[c.over];
        if (y == kUnset) continue;
        const bool pos = effective_sign(c, conv_) > 0;
        Elem& in = col[c.in];
        Elem& out = col[c.out];
        if (in != kUnset) {
          const Elem want = pos ? x_.op(y, in) : x_.left_divide(y, in);
          if (out == kUnset) {
            out = want;
            changed = true;
          } else if (out != want) {
            return false;
          }
        } else if (out != kUnset) {
          in = pos ? x_.left_divide(y, out) : x_.op(y, out);
          changed = true;
        }
      }
    }
    return true;
  }

  void dfs(Coloring col) {
    if (!propagate(col)) return;
    auto it = std::find(col.begin(), col.end(), kUnset);
    if (it == col.end()) {
      if (!is_coloring(k_, x_, col, conv_)) throw std::logic_error("coloring search produced an invalid coloring");
      out_.push_back(std::move(col));
      return;
    }
    const auto arc = static_cast<std::size_t>(it - col.begin());
    for (Elem v = 0; v < x_.size(); ++v) {
      Coloring next = col;
      next[arc] = v;
      dfs(std::move(next));
    }
  }

  const KnotDiagram& k_;
  const Quandle& x_;
  CrossingConvention conv_;
  std::vector<Coloring> out_;
};

}  // namespace

std::vector<Coloring> colorings(const KnotDiagram& k, const Quandle& x, CrossingConvention conv) {
  return ColoringSearch(k, x, conv).run();
}

std::size_t col_count(const KnotDiagram& k, const Quandle& x, CrossingConvention conv) {
  std::size_t count = 0;
  for (const auto& col : colorings(k, x, conv)) {
    if (std::any_of(col.begin(), col.end(), [&](Elem v) { return v != col.front(); })) ++count;
  }
  return count;
}

GElem crossing_weight(const Crossing& c, const ConstantCocycle& b, const Coloring& col, CrossingConvention conv) {
  const bool pos = effective_sign(c, conv) > 0;
  const Elem source = pos ? col[c.in] : col[c.out];
  const GElem w = b(col[c.over], source);
  return pos ? w : b.group().inv(w);
}

GElem coloring_product(const KnotDiagram& k, const ConstantCocycle& b, const Coloring& col, CrossingConvention conv) {
  const FiniteGroup& g = b.group();
  GElem p = g.identity();
  for (const auto& c : k.crossings) p = g.mul(crossing_weight(c, b, col, conv), p);
  return p;
}

std::vector<GElem> cocycle_invariant(const KnotDiagram& k, const ConstantCocycle& b, CrossingConvention conv) {
  std::vector<GElem> classes;
  for (const auto& col : colorings(k, b.quandle(), conv)) {
    classes.push_back(b.group().class_of(coloring_product(k, b, col, conv)));
  }
  std::sort(classes.begin(), classes.end());
  return classes;
}

std::vector<std::string> class_labels(const FiniteGroup& g, const std::vector<GElem>& classes) {
  std::vector<std::string> out;
  out.reserve(classes.size());
  for (GElem c : classes) out.push_back(g.label(c));
  return out;
}

}  // namespace qk
