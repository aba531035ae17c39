#include "flipflow/instance_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "flipflow/errors.hpp"
#include "flipflow/rational.hpp"

namespace flipflow {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    if (tok[0] == '#') break;  // comment to end of line
    out.push_back(tok);
  }
  return out;
}

bool parse_int(const std::string& tok, long long* out) {
  if (tok.empty()) return false;
  std::size_t i = tok[0] == '-' ? 1 : 0;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
  *out = std::stoll(tok);
  return true;
}

class Parser {
 public:
  explicit Parser(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      auto toks = tokenize(line);
      if (!toks.empty()) lines_.push_back(std::move(toks));
    }
  }

  Instance run() {
    const auto& header = next("digraph header");
    if (header.size() != 2 || header[0] != "digraph" ||
        header[1].rfind("n=", 0) != 0)
      throw InputError("instance must start with 'digraph n=<int>'");
    long long n;
    if (!parse_int(header[1].substr(2), &n) || n < 1 || n > 63)
      throw InputError("vertex count must be in 1..63");
    n_ = static_cast<int>(n);

    std::vector<Arc> arcs;
    std::vector<int> weights;
    while (peek() && peek()->front() == "arc") {
      const auto toks = next("arc");
      if (toks.size() < 3 || toks.size() > 4)
        throw InputError("arc lines are 'arc <tail> <head> [w=<0|1>]'");
      int tail = vertex_id(toks[1]);
      int head = vertex_id(toks[2]);
      int w = 1;
      if (toks.size() == 4) {
        long long val;
        if (toks[3].rfind("w=", 0) != 0 || !parse_int(toks[3].substr(2), &val) ||
            (val != 0 && val != 1))
          throw InputError("arc weight must be w=0 or w=1");
        w = static_cast<int>(val);
      }
      arcs.push_back({tail, head});
      weights.push_back(w);
    }
    Digraph d(n_, std::move(arcs), std::move(weights));

    std::map<std::string, CrossingFamily> families;
    std::map<std::string, FnSpec> fns;
    while (peek()) {
      const auto toks = next("section");
      if (toks[0] == "family") {
        if (toks.size() != 3 || toks[2] != "{")
          throw InputError("family sections are 'family <name> {'");
        if (families.count(toks[1]))
          throw InputError("duplicate family name: " + toks[1]);
        families.emplace(toks[1], parse_family(d));
      } else if (toks[0] == "fn") {
        auto [name, spec] = parse_fn(toks, families);
        if (fns.count(name)) throw InputError("duplicate fn name: " + name);
        fns.emplace(std::move(name), std::move(spec));
      } else {
        throw InputError("unknown section: " + toks[0]);
      }
    }
    return Instance{std::move(d), std::move(families), std::move(fns)};
  }

 private:
  const std::vector<std::string>* peek() {
    return pos_ < lines_.size() ? &lines_[pos_] : nullptr;
  }
  const std::vector<std::string>& next(const char* what) {
    if (pos_ >= lines_.size())
      throw InputError(std::string("unexpected end of input, expected ") +
                       what);
    return lines_[pos_++];
  }

  int vertex_id(const std::string& tok) {
    long long v;
    if (parse_int(tok, &v)) {
      if (v < 0 || v >= n_) throw InputError("vertex id out of range: " + tok);
      return static_cast<int>(v);
    }
    auto it = names_.find(tok);
    if (it != names_.end()) return it->second;
    int id = next_name_id_++;
    if (id >= n_)
      throw InputError("too many named vertices for declared n: " + tok);
    names_.emplace(tok, id);
    return id;
  }

  VertexSet vertex_set(const std::vector<std::string>& toks, std::size_t from,
                       std::size_t to) {
    VertexSet s;
    for (std::size_t i = from; i < to; ++i) s.add(vertex_id(toks[i]));
    return s;
  }

  CrossingFamily parse_family(const Digraph& d) {
    std::vector<VertexSet> members;
    std::map<std::pair<int, int>, LatticeFamily> lattices;
    std::optional<CrossingFamily> built;
    bool has_sets = false, has_pairs = false;
    for (;;) {
      const auto toks = next("family body");
      if (toks[0] == "}") break;
      if (toks[0] == "set") {
        has_sets = true;
        members.push_back(vertex_set(toks, 1, toks.size()));
      } else if (toks[0] == "builder") {
        if (toks.size() != 2) throw InputError("builder lines take one name");
        if (built) throw InputError("a family takes at most one builder");
        if (toks[1] == "dicuts")
          built = dicut_family(d);
        else if (toks[1] == "all-proper")
          built = all_proper_family(n_);
        else if (toks[1] == "singletons-complements")
          built = singletons_and_complements(n_);
        else
          throw InputError("unknown family builder: " + toks[1]);
      } else if (toks[0] == "pair") {
        has_pairs = true;
        if (toks.size() != 4 || toks[3] != "{")
          throw InputError("pair sections are 'pair <u> <v> {'");
        int u = vertex_id(toks[1]);
        int v = vertex_id(toks[2]);
        lattices.emplace(std::make_pair(u, v), parse_lattice());
      } else {
        throw InputError("unknown family key: " + toks[0]);
      }
    }
    if ((has_sets ? 1 : 0) + (has_pairs ? 1 : 0) + (built ? 1 : 0) > 1)
      throw InputError(
          "a family is explicit sets, pair lattices, or one builder");
    if (built) return *std::move(built);
    if (has_pairs) return CrossingFamily::well_provided(std::move(lattices), n_);
    CrossingFamily fam = CrossingFamily::explicit_family(members, n_);
    CrossingCheck check = check_crossing_family(fam.explicit_members(), n_);
    if (!check.ok)
      throw InputError("family is not crossing: members " +
                       check.u.to_string() + " and " + check.w.to_string() +
                       " cross without intersection/union");
    return fam;
  }

  LatticeFamily parse_lattice() {
    LatticeFamily lat;
    lat.below.assign(n_, VertexSet());
    for (int v = 0; v < n_; ++v) lat.below[v].add(v);
    bool saw_min = false, saw_max = false;
    for (;;) {
      const auto toks = next("pair body");
      if (toks[0] == "}") break;
      if (toks[0] == "min") {
        saw_min = true;
        lat.min_member = vertex_set(toks, 1, toks.size());
      } else if (toks[0] == "max") {
        saw_max = true;
        lat.max_member = vertex_set(toks, 1, toks.size());
      } else if (toks[0] == "prec") {
        if (toks.size() != 3) throw InputError("prec lines are 'prec <a> <b>'");
        lat.below[vertex_id(toks[2])].add(vertex_id(toks[1]));
      } else {
        throw InputError("unknown pair key: " + toks[0]);
      }
    }
    if (!saw_min || !saw_max)
      throw InputError("pair lattices need min and max lines");
    // Transitive closure of the authored precedence.
    for (int k = 0; k < n_; ++k)
      for (int v = 0; v < n_; ++v)
        if (lat.below[v].contains(k)) lat.below[v] = lat.below[v] | lat.below[k];
    lat.validate(n_);
    return lat;
  }

  std::pair<std::string, FnSpec> parse_fn(
      const std::vector<std::string>& toks,
      const std::map<std::string, CrossingFamily>& families) {
    bool has_block = !toks.empty() && toks.back() == "{";
    std::size_t end = toks.size() - (has_block ? 1 : 0);
    if (end != 4 || toks[2].rfind("family=", 0) != 0 ||
        toks[3].rfind("builder=", 0) != 0)
      throw InputError("fn lines are 'fn <name> family=<fam> builder=<spec>'");
    FnSpec spec;
    spec.family = toks[2].substr(7);
    spec.builder = toks[3].substr(8);
    auto fam = families.find(spec.family);
    if (fam == families.end())
      throw InputError("fn references unknown family: " + spec.family);

    if (spec.builder == "table") {
      if (!has_block) throw InputError("table fns need a block of set lines");
      for (;;) {
        const auto row = next("table body");
        if (row[0] == "}") break;
        if (row[0] != "set" || row.size() < 4 || row[row.size() - 2] != "=")
          throw InputError("table rows are 'set <id...> = <int>'");
        long long value;
        if (!parse_int(row.back(), &value))
          throw InputError("table value must be an integer");
        VertexSet key = vertex_set(row, 1, row.size() - 2);
        if (!spec.table.emplace(key, value).second)
          throw InputError("duplicate table row for " + key.to_string());
      }
      std::vector<VertexSet> keys;
      for (const auto& [k, _] : spec.table) keys.push_back(k);
      std::vector<VertexSet> fam_members = fam->second.enumerate();
      std::sort(keys.begin(), keys.end());
      if (keys != fam_members)
        throw InputError("table rows must cover the family exactly");
      SubmodularOracle oracle{fam->second,
                              [table = spec.table](VertexSet u) {
                                return table.at(u);
                              },
                              "table"};
      CrossingCheck sub = check_crossing_submodular(oracle, n_);
      if (!sub.ok)
        throw InputError("table fn is not crossing submodular at " +
                         sub.u.to_string() + ", " + sub.w.to_string());
    } else if (has_block) {
      throw InputError("only table fns take a block");
    } else {
      std::string b = spec.builder;
      auto colon = b.find(':');
      std::string head = b.substr(0, colon);
      if (head == "outdeg-minus" || head == "dicut-slack") {
        long long param;
        if (colon == std::string::npos || !parse_int(b.substr(colon + 1), &param))
          throw InputError("builder " + head + " needs an integer parameter");
      } else if (b == "ceil-half-imbalance") {
        // no parameter
      } else {
        throw InputError("unknown fn builder: " + b);
      }
    }
    return {toks[1], std::move(spec)};
  }

  std::vector<std::vector<std::string>> lines_;
  std::size_t pos_ = 0;
  int n_ = 0;
  std::map<std::string, int> names_;
  int next_name_id_ = 0;
};

std::string set_ids(VertexSet s) {
  std::string out;
  for (int v : s.members()) {
    if (!out.empty()) out += " ";
    out += std::to_string(v);
  }
  return out;
}

}  // namespace

Instance parse_instance(const std::string& text) {
  return Parser(text).run();
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

std::string print_instance(const Instance& inst) {
  std::ostringstream out;
  out << "digraph n=" << inst.d.vertex_count() << "\n";
  for (int a = 0; a < inst.d.arc_count(); ++a) {
    out << "arc " << inst.d.arc(a).tail << " " << inst.d.arc(a).head;
    if (inst.d.weight(a) == 0) out << " w=0";
    out << "\n";
  }
  for (const auto& [name, fam] : inst.families) {
    out << "family " << name << " {\n";
    if (fam.kind() == CrossingFamily::Kind::Explicit) {
      for (const VertexSet& m : fam.explicit_members())
        out << "  set " << set_ids(m) << "\n";
    } else {
      for (const auto& [pair, lat] : fam.lattices()) {
        out << "  pair " << pair.first << " " << pair.second << " {\n";
        out << "    min " << set_ids(lat.min_member) << "\n";
        out << "    max " << set_ids(lat.max_member) << "\n";
        for (int v = 0; v < static_cast<int>(lat.below.size()); ++v)
          for (int u : lat.below[v].members())
            if (u != v) out << "    prec " << u << " " << v << "\n";
        out << "  }\n";
      }
    }
    out << "}\n";
  }
  for (const auto& [name, fn] : inst.fns) {
    out << "fn " << name << " family=" << fn.family << " builder=" << fn.builder;
    if (fn.builder == "table") {
      out << " {\n";
      for (const auto& [key, value] : fn.table)
        out << "  set " << set_ids(key) << " = " << value << "\n";
      out << "}\n";
    } else {
      out << "\n";
    }
  }
  return out.str();
}

const CrossingFamily& find_family(const Instance& inst,
                                  const std::string& name) {
  auto it = inst.families.find(name);
  if (it == inst.families.end())
    throw InputError("unknown family: " + name);
  return it->second;
}

SubmodularOracle make_oracle(const Instance& inst, const std::string& fn_name) {
  auto it = inst.fns.find(fn_name);
  if (it == inst.fns.end()) throw InputError("unknown fn: " + fn_name);
  const FnSpec& spec = it->second;
  const CrossingFamily& family = find_family(inst, spec.family);
  const Digraph& d = inst.d;

  if (spec.builder == "table") {
    return {family, [table = spec.table](VertexSet u) { return table.at(u); },
            "table"};
  }
  auto colon = spec.builder.find(':');
  std::string head = spec.builder.substr(0, colon);
  if (head == "outdeg-minus") {
    long long k = std::stoll(spec.builder.substr(colon + 1));
    return {family,
            [d, k](VertexSet u) -> long long { return out_degree(d, u) - k; },
            spec.builder};
  }
  if (head == "dicut-slack") {
    long long t = std::stoll(spec.builder.substr(colon + 1));
    return {family,
            [d, t](VertexSet u) -> long long { return out_degree(d, u) - t; },
            spec.builder};
  }
  if (spec.builder == "ceil-half-imbalance") {
    return {family,
            [d](VertexSet u) -> long long {
              return ceil_div(out_degree(d, u) - in_degree(d, u), 2);
            },
            spec.builder};
  }
  throw InputError("unknown fn builder: " + spec.builder);
}

std::vector<long long> load_int_vector(const std::string& path,
                                       std::size_t expected) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open vector file: " + path);
  std::vector<long long> out;
  long long v;
  while (in >> v) out.push_back(v);
  if (out.size() != expected)
    throw InputError("vector file " + path + " has " +
                     std::to_string(out.size()) + " entries, expected " +
                     std::to_string(expected));
  return out;
}

}  // namespace flipflow
