#include "banachlab/space.hpp"

#include <cmath>
#include <cstdlib>

#include "banachlab/calderon.hpp"
#include "banachlab/errors.hpp"

namespace banachlab {

SpacePtr lp_space(double p) {
  if (!(p >= 1.0)) throw DomainError("l_p needs p >= 1");
  return std::make_shared<const Space>(Space{LpSpace{p}});
}

SpacePtr schlumprecht_space(GaugeFunction f) {
  return std::make_shared<const Space>(Space{SchlumprechtSpace{std::move(f)}});
}

SpacePtr convexified_space(SpacePtr base, double p) {
  if (!base) throw ArgumentError("convexification of a null space");
  if (!(p >= 1.0) || !std::isfinite(p)) throw DomainError("convexification exponent must be finite and >= 1");
  return std::make_shared<const Space>(Space{ConvexifiedSpace{std::move(base), p}});
}

SpacePtr calderon_space(SpacePtr x, SpacePtr y, double theta) {
  if (!x || !y) throw ArgumentError("Calderon product of a null space");
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("Calderon product needs 0 < theta < 1");
  return std::make_shared<const Space>(Space{CalderonSpace{std::move(x), std::move(y), theta}});
}

SpacePtr dual_space(SpacePtr base) {
  if (!base) throw ArgumentError("dual of a null space");
  return std::make_shared<const Space>(Space{DualSpace{std::move(base)}});
}

SpacePtr y_distortion_space(FunctionalFamily family) {
  if (family.members.empty()) throw ArgumentError("functional family must be nonempty");
  return std::make_shared<const Space>(Space{YDistortionSpace{std::move(family)}});
}

bool is_lattice(const Space& space) {
  return std::visit(
      [](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, YDistortionSpace>) {
          return false;
        } else if constexpr (std::is_same_v<T, ConvexifiedSpace> || std::is_same_v<T, DualSpace>) {
          return is_lattice(*s.base);
        } else if constexpr (std::is_same_v<T, CalderonSpace>) {
          return is_lattice(*s.x) && is_lattice(*s.y);
        } else {
          return true;
        }
      },
      space.node);
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const GaugeFunction& default_gauge) : default_gauge_(default_gauge) {
    std::size_t start = 0;
    for (std::size_t k = 0; k <= text.size(); ++k) {
      if (k == text.size() || text[k] == ':') {
        tokens_.emplace_back(text.substr(start, k - start));
        start = k + 1;
      }
    }
    text_ = std::string(text);
  }

  SpacePtr parse_all() {
    auto s = parse_space();
    if (pos_ != tokens_.size()) fail("trailing tokens");
    return s;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw ArgumentError("bad space '" + text_ + "': " + why);
  }

  std::string next() {
    if (pos_ >= tokens_.size()) fail("unexpected end");
    return tokens_[pos_++];
  }

  bool at_end() const { return pos_ >= tokens_.size(); }

  double number(const std::string& tok) const {
    if (tok == "inf") return kInf;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size()) fail("expected a number, got '" + tok + "'");
    // allow simple fractions such as 4/3
    return v;
  }

  double exponent(const std::string& tok) const {
    const auto slash = tok.find('/');
    if (slash != std::string::npos) {
      return number(tok.substr(0, slash)) / number(tok.substr(slash + 1));
    }
    return number(tok);
  }

  GaugeFunction gauge() {
    const std::string name = next();
    if (name == "pow") return parse_gauge("pow:" + next());
    return parse_gauge(name);
  }

  SpacePtr parse_space() {
    const std::string head = next();
    if (head == "s") {
      if (at_end() || !is_gauge_start(tokens_[pos_])) return schlumprecht_space(default_gauge_);
      return schlumprecht_space(gauge());
    }
    if (head == "conv") {
      auto base = parse_space();
      return convexified_space(std::move(base), exponent(next()));
    }
    if (head == "cal") {
      auto x = parse_space();
      auto y = parse_space();
      return calderon_space(std::move(x), std::move(y), exponent(next()));
    }
    if (head == "dual") return dual_space(parse_space());
    if (head == "spr") {
      const double p = exponent(next());
      const double r = exponent(next());
      return space_spr(p, r, gauge());
    }
    if (head.size() > 1 && head[0] == 'l') return lp_space(exponent(head.substr(1)));
    fail("unknown space '" + head + "'");
  }

  static bool is_gauge_start(const std::string& tok) {
    return tok == "log2p1" || tok == "sqrt" || tok == "one" || tok == "pow";
  }

  const GaugeFunction& default_gauge_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  std::string text_;
};

std::string exponent_text(double p) { return p == kInf ? "inf" : format_real(p); }

}  // namespace

SpacePtr parse_space(std::string_view text, const GaugeFunction& default_gauge) {
  if (text.empty()) throw ArgumentError("empty space descriptor");
  return Parser(text, default_gauge).parse_all();
}

std::string to_string(const Space& space) {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LpSpace>) {
          return "l" + exponent_text(s.p);
        } else if constexpr (std::is_same_v<T, SchlumprechtSpace>) {
          return "s:" + s.gauge.label();
        } else if constexpr (std::is_same_v<T, ConvexifiedSpace>) {
          return "conv:" + to_string(*s.base) + ":" + exponent_text(s.p);
        } else if constexpr (std::is_same_v<T, CalderonSpace>) {
          return "cal:" + to_string(*s.x) + ":" + to_string(*s.y) + ":" + format_real(s.theta);
        } else if constexpr (std::is_same_v<T, DualSpace>) {
          return "dual:" + to_string(*s.base);
        } else {
          return "ydist(r=" + format_real(s.family.r) + ",members=" + std::to_string(s.family.members.size()) + ")";
        }
      },
      space.node);
}

}  // namespace banachlab
