#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "linkbuild/graph.hpp"
#include "linkbuild/surfer.hpp"

namespace linkbuild {

enum class Role : std::uint8_t { target, cycle, sink, shaded, light, tail, clique };

std::string_view to_string(Role r);
Role parse_role(std::string_view name);

enum class Family : std::uint8_t { cycle_vs_sink, sink_vs_sink };

std::string_view to_string(Family f);

class FamilyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters of a generated instance. Fields that do not apply to the
/// family are zero (u, delta, lambda, t_s for sink-vs-sink; c, t_b for
/// cycle-vs-sink).
struct FamilyParams {
  Family family = Family::cycle_vs_sink;
  double alpha = 0.85;
  std::size_t k = 0;
  std::size_t u = 0;
  std::size_t c = 0;
  double delta = 0.0;
  double lambda = 0.0;
  std::size_t t_c = 0;  ///< tails per cycle node or per light node
  std::size_t t_s = 0;  ///< tails per sink (cycle-vs-sink)
  std::size_t t_b = 0;  ///< tails per shaded node (sink-vs-sink)
  std::size_t t_i = 0;  ///< clique size
  std::size_t clique_degree = 0;  ///< realized out-degree inside the clique
  std::size_t n = 0;
};

struct FamilyInstance {
  DirectedGraph graph;
  NodeId target = 0;
  std::vector<Role> roles;
  FamilyParams params;

  /// Nodes carrying `role`, ascending.
  std::vector<NodeId> nodes_with(Role role) const;
};

struct FamilyOptions {
  /// Overrides the clique size t_i (still at least 2).
  std::optional<std::size_t> clique_size;
  /// Caps the clique's internal out-degree; clique node j links to
  /// j+1, ..., j+d (mod t_i). The default keeps the complete digraph.
  std::size_t max_clique_degree = std::numeric_limits<std::size_t>::max();
  /// Used by the cycle-vs-sink ranking check.
  SurferParams surfer;
};

/// Solution of pi_c/pi_s = 2 + delta for the t_s parameterization.
/// Throws FamilyError when 1 - lambda*alpha <= 0.
double lambda_param(double alpha, std::size_t k, std::size_t u, double delta);

/// Tail count per sink, u / (2(1 - lambda*alpha)), before rounding.
double sink_tail_length(double alpha, std::size_t k, std::size_t u, double delta);

/*
  "Cycle versus sink" family. Layout: target 0; cycle nodes 1..k (each links
  to the next); sinks k+1..2k; then t_c tails per cycle node, t_s tails per
  sink and the clique. The target links to every sink and has no inlinks.
  t_c = u, t_i = u^2, t_s = round(u / (2(1 - lambda*alpha))), lowered by up to
  three if rounding broke pi_c/2 > pi_s on the built graph.
*/
FamilyInstance cycle_vs_sink(std::size_t u, std::size_t k, double delta, double alpha,
                             const FamilyOptions& opts = {});

/*
  "Sink versus sink" family. Layout: target 0; shaded sinks 1..k (each fed by
  the target); light sinks k+1..2k; then t_b tails per shaded node, t_c tails
  per light node and the clique. t_b = c, t_c = c + 1, t_i = c^2.
*/
FamilyInstance sink_vs_sink(std::size_t c, std::size_t k, double alpha,
                            const FamilyOptions& opts = {});

/// Role sidecar: one "nodeid role" line per node.
void write_roles(const FamilyInstance& inst, std::ostream& out);
std::vector<Role> read_roles(std::istream& in, std::size_t n);

}  // namespace linkbuild
