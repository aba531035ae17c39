#pragma once

#include <map>
#include <string>
#include <vector>

#include "flipflow/digraph.hpp"
#include "flipflow/setfam.hpp"

namespace flipflow {

// Text instance format:
//
//   digraph n=<int>
//   arc <tail> <head> [w=<0|1>]
//   family <name> {
//     set <id...>                   (explicit member)
//     builder dicuts|all-proper|singletons-complements
//     pair <u> <v> {                (well-provided lattice for C_uv)
//       min <id...>
//       max <id...>
//       prec <a> <b>                (a precedes b)
//     }
//   }
//   fn <name> family=<fam> builder=<spec> [{ set <id...> = <int> ... }]
//
// Vertices are ids 0..n-1; non-numeric vertex tokens are interned to
// fresh ids in order of first appearance. Unknown keys are rejected.
struct FnSpec {
  std::string family;
  std::string builder;  // outdeg-minus:k | dicut-slack:t |
                        // ceil-half-imbalance | table
  std::map<VertexSet, long long> table;

  bool operator==(const FnSpec&) const = default;
};

struct Instance {
  Digraph d;
  std::map<std::string, CrossingFamily> families;
  std::map<std::string, FnSpec> fns;

  bool operator==(const Instance&) const = default;
};

Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);
std::string print_instance(const Instance& inst);

// Materializes the named fn against its family and the instance digraph.
SubmodularOracle make_oracle(const Instance& inst, const std::string& fn_name);
const CrossingFamily& find_family(const Instance& inst,
                                  const std::string& name);

// Whitespace-separated integer vectors (b per vertex, c per arc).
std::vector<long long> load_int_vector(const std::string& path,
                                       std::size_t expected);

}  // namespace flipflow
