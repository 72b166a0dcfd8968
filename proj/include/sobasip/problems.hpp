#pragma once

#include "sobasip/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sobasip {

enum class ProblemFamily { hock_schittkowski, cute_misc, synthetic };

struct ReferenceSolution {
  Vector x;
  double f = 0.0;
  std::string note;
};

struct ProblemSpec {
  std::string name;
  Eigen::Index dim = 0;
  Bounds bounds;
  Vector start;
  ProblemFamily family = ProblemFamily::synthetic;
  std::optional<ReferenceSolution> reference;
};

namespace problems {

/// Registered problem names in stable registry order.
std::vector<std::string> list();

bool is_scalable(const std::string& name);

ProblemSpec get_spec(const std::string& name, std::optional<Eigen::Index> n = {});

/// Builds a fully wired problem. Scalable entries (bdexp, nonscomp,
/// mccormck, hatfldc) accept an n override. Throws std::invalid_argument
/// for unknown names or invalid n.
BoxProblem get(const std::string& name, std::optional<Eigen::Index> n = {});

/// Loads a problem from a plain-text definition: lines of
///   name <id> / n <int> / objective <builtin key> /
///   l <v...> / u <v...> / x0 <v...>
/// Values accept inf/-inf; a single value broadcasts to all coordinates.
/// The objective key names a registered problem whose objective family is
/// rebound to the given dimension, bounds, and start.
BoxProblem load_problem_file(const std::string& path);

}  // namespace problems
}  // namespace sobasip
