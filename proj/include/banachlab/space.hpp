#ifndef BANACHLAB_SPACE_HPP
#define BANACHLAB_SPACE_HPP

#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "banachlab/gauge.hpp"
#include "banachlab/seq_vector.hpp"

namespace banachlab {

// Finite family of functionals z* with the weight r of the distorted norm
// max(||x||_2, r max |<x, z*>|).
struct FunctionalFamily {
  std::vector<SeqVector> members;
  double r = 1.0;
};

struct Space;
using SpacePtr = std::shared_ptr<const Space>;

struct LpSpace {
  double p;
};
struct SchlumprechtSpace {
  GaugeFunction gauge;
};
// x -> ||base(|x|^p)||^(1/p)
struct ConvexifiedSpace {
  SpacePtr base;
  double p;
};
// X^(1-theta) Y^theta
struct CalderonSpace {
  SpacePtr x;
  SpacePtr y;
  double theta;
};
struct DualSpace {
  SpacePtr base;
};
struct YDistortionSpace {
  FunctionalFamily family;
};

struct Space {
  std::variant<LpSpace, SchlumprechtSpace, ConvexifiedSpace, CalderonSpace, DualSpace, YDistortionSpace> node;
};

SpacePtr lp_space(double p);
SpacePtr schlumprecht_space(GaugeFunction f);
SpacePtr convexified_space(SpacePtr base, double p);
SpacePtr calderon_space(SpacePtr x, SpacePtr y, double theta);
SpacePtr dual_space(SpacePtr base);
SpacePtr y_distortion_space(FunctionalFamily family);

// Everything except YDistortion (and anything built on it) is a lattice norm.
bool is_lattice(const Space& space);

// Grammar: l<p> | linf | s | s:<gauge> | conv:<space>:<p> | cal:<space>:<space>:<theta>
//        | dual:<space> | spr:<p>:<r>:<gauge>
// <gauge> is log2p1 | sqrt | one | pow:<a>; a bare `s` takes `default_gauge`.
SpacePtr parse_space(std::string_view text, const GaugeFunction& default_gauge = GaugeFunction::log2p1());
std::string to_string(const Space& space);

}  // namespace banachlab

#endif  // BANACHLAB_SPACE_HPP
