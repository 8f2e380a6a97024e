// ohmgraph: command-line front end for the resistive-network library.
//
// Exit status: 0 ok, 2 bad input (parse errors, unknown ids, invalid graph),
// 3 computation error, 4 verification failure.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ohmgraph/error.hpp"
#include "ohmgraph/graph_io.hpp"
#include "ohmgraph/laplacian.hpp"
#include "ohmgraph/potentials.hpp"
#include "ohmgraph/projections.hpp"
#include "ohmgraph/rayleigh.hpp"
#include "ohmgraph/spanning.hpp"
#include "ohmgraph/verify.hpp"

namespace {

using namespace ohmgraph;
using ojson = nlohmann::ordered_json;

constexpr int kExitInput = 2;
constexpr int kExitCompute = 3;
constexpr int kExitVerify = 4;

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularReducedLaplacian:
    case ErrorCode::TooManyTrees:
    case ErrorCode::RatioMismatch:
    case ErrorCode::DegeneratePivot:
    case ErrorCode::InvalidArgument:
    case ErrorCode::BrokenPath:
      return kExitCompute;
    default:
      return kExitInput;
  }
}

// --- number formatting -----------------------------------------------------

int g_precision = 12;

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", g_precision, x);
  std::string s(buf);
  if (std::isfinite(x) && s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

// JSON numbers go through the same rounding so every format agrees.
ojson num(double x) {
  if (!std::isfinite(x)) return fmt(x);
  const double r = std::strtod(fmt(x).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

// --- result model ----------------------------------------------------------

// A table for csv/pretty output. The json form is built alongside.
struct Table {
  std::string title;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  ojson inputs = ojson::object();
  ojson result;
  std::vector<Table> tables;
  bool scalar = false;  // pretty-print the bare number
};

void matrix_out(const Eigen::MatrixXd& m, const std::vector<std::string>& rows, const std::vector<std::string>& cols,
                const std::string& corner, ojson& json, Table& table) {
  json = ojson::object();
  json["rows"] = rows;
  json["columns"] = cols;
  ojson data = ojson::array();
  table.header = {corner};
  table.header.insert(table.header.end(), cols.begin(), cols.end());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    std::vector<std::string> cells{rows[static_cast<std::size_t>(i)]};
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(num(m(i, j)));
      cells.push_back(fmt(m(i, j)));
    }
    data.push_back(row);
    table.rows.push_back(cells);
  }
  json["values"] = data;
}

std::vector<std::string> edge_labels(const WeightedGraph& g) {
  std::vector<std::string> out;
  for (const auto& e : g.edges()) out.push_back(e.id);
  return out;
}

void emit(std::ostream& os, const std::string& command, const Output& out, const std::string& format) {
  if (format == "json") {
    ojson doc;
    doc["command"] = command;
    doc["inputs"] = out.inputs;
    doc["result"] = out.result;
    os << doc.dump() << '\n';
    return;
  }
  if (format == "csv") {
    bool first = true;
    for (const auto& t : out.tables) {
      if (!first) os << '\n';
      first = false;
      for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
      os << '\n';
      for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << '\n';
      }
    }
    return;
  }
  if (out.scalar) {
    os << out.tables.front().rows.front().back() << '\n';
    return;
  }
  bool first = true;
  for (const auto& t : out.tables) {
    if (!first) os << '\n';
    first = false;
    if (!t.title.empty()) os << t.title << '\n';
    std::vector<std::size_t> width(t.header.size(), 0);
    for (std::size_t i = 0; i < t.header.size(); ++i) width[i] = t.header[i].size();
    for (const auto& r : t.rows) {
      for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
      std::string s;
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += "  ";
        s += cells[i];
        if (i + 1 < cells.size()) s.append(width[i] - cells[i].size(), ' ');
      }
      os << s << '\n';
    };
    line(t.header);
    for (const auto& r : t.rows) line(r);
  }
}

Output scalar_out(const std::string& name, double value) {
  Output out;
  out.scalar = true;
  out.result = num(value);
  out.tables.push_back({"", {"quantity", "value"}, {{name, fmt(value)}}});
  return out;
}

// Adds the condition estimate when the factorization is poorly conditioned.
void note_condition(Output& out, const GeneralizedInverse& l) {
  if (!l.ill_conditioned()) return;
  std::cerr << "warning: reduced Laplacian condition estimate " << fmt(l.condition_estimate) << '\n';
  if (out.scalar) {
    out.result = ojson{{"value", out.result}, {"condition_estimate", num(l.condition_estimate)}};
  } else if (out.result.is_object()) {
    out.result["condition_estimate"] = num(l.condition_estimate);
  }
}

// --- parsing helpers -------------------------------------------------------

ZeroDivisor parse_divisor(const WeightedGraph& g, const std::vector<std::string>& specs, ojson& echo) {
  Eigen::VectorXd a = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(g.vertex_count()));
  echo = ojson::array();
  for (const auto& s : specs) {
    const auto colon = s.rfind(':');
    if (colon == std::string::npos) throw Error(ErrorCode::ParseError, "mass '" + s + "' is not V:a");
    const VertexIndex v = g.vertex_index(s.substr(0, colon));
    const std::string value = s.substr(colon + 1);
    char* end = nullptr;
    const double mass = std::strtod(value.c_str(), &end);
    if (value.empty() || *end != '\0' || !std::isfinite(mass)) {
      throw Error(ErrorCode::ParseError, "mass '" + s + "' has a bad amount");
    }
    a(static_cast<Eigen::Index>(v)) += mass;
    echo.push_back(s);
  }
  return ZeroDivisor::from_masses(std::move(a), tolerance_from_env());
}

ContractionQuery parse_query(const WeightedGraph& g, const std::string& text) {
  std::istringstream in(text);
  std::string kind;
  in >> kind;
  ContractionQuery q;
  std::size_t arity = 0;
  if (kind == "r") {
    q.kind = ContractionQuery::Kind::Resistance;
    arity = 2;
  } else if (kind == "j") {
    q.kind = ContractionQuery::Kind::J;
    arity = 3;
  } else if (kind == "xi") {
    q.kind = ContractionQuery::Kind::CrossRatio;
    arity = 4;
  } else {
    throw Error(ErrorCode::ParseError, "query '" + text + "' must start with r, j or xi");
  }
  std::string name;
  while (in >> name) q.vertices.push_back(g.vertex_index(name));
  if (q.vertices.size() != arity) {
    throw Error(ErrorCode::ParseError, "query '" + text + "' expects " + std::to_string(arity) + " vertices");
  }
  return q;
}

// Refines the model with the given points and returns kernel + vertex indices.
struct PointQuery {
  RefinedModel model;
  GeneralizedInverse inverse;
};

PointQuery prepare(const WeightedGraph& g, const std::vector<std::string>& texts) {
  std::vector<Point> points;
  for (const auto& t : texts) points.push_back(parse_point(g, t));
  PointQuery q{refine(g, points), {}};
  q.inverse = grounded_inverse(q.model.graph, 0);
  return q;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ohmgraph: weighted graphs as resistive electrical networks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string graph_path;
  std::string format = "pretty";
  app.add_option("-g,--graph", graph_path, "graph JSON file");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
  app.add_option("--precision", g_precision, "significant digits")->check(CLI::Range(1, 17));

  bool echo = false;
  auto* validate_cmd = app.add_subcommand("validate", "check the graph invariants");
  validate_cmd->add_flag("--echo", echo, "print the parsed graph as JSON");

  std::vector<std::string> pts;
  auto* resistance_cmd = app.add_subcommand("resistance", "effective resistance r(X, Y)");
  resistance_cmd->add_option("points", pts, "X Y")->expected(2)->required();
  auto* jfun_cmd = app.add_subcommand("jfun", "potential kernel j_Q(X, Y)");
  jfun_cmd->add_option("points", pts, "Q X Y")->expected(3)->required();
  auto* cross_cmd = app.add_subcommand("cross", "cross ratio xi(X, Y, Z, W)");
  cross_cmd->add_option("points", pts, "X Y Z W")->expected(4)->required();

  auto* xi_cmd = app.add_subcommand("xi", "cross-ratio matrix of the edges");
  auto* project_cmd = app.add_subcommand("project", "cycle and cocycle projection matrices");

  std::string from, to, ground;
  double amps = 1.0;
  auto* kirchhoff_cmd = app.add_subcommand("kirchhoff", "currents, voltages and potentials for a source");
  kirchhoff_cmd->add_option("--from", from, "vertex where current enters")->required();
  kirchhoff_cmd->add_option("--to", to, "vertex where current leaves")->required();
  kirchhoff_cmd->add_option("--amps", amps, "source current");
  kirchhoff_cmd->add_option("--ground", ground, "zero of potential (default: first vertex)");

  std::size_t cap = kDefaultTreeCap;
  auto* trees_cmd = app.add_subcommand("trees", "enumerate spanning trees");
  trees_cmd->add_option("--cap", cap, "refuse above this many trees");

  std::string first_edge;
  std::vector<std::string> then_edges, queries;
  auto* contract_cmd = app.add_subcommand("contract", "Rayleigh updates under edge contraction");
  contract_cmd->add_option("--edge", first_edge, "edge to contract")->required();
  contract_cmd->add_option("--then", then_edges, "further edges, in order");
  contract_cmd->add_option("--query", queries, "\"r A C\", \"j Z X Y\" or \"xi X Y Z W\"");

  std::vector<std::string> masses, with_masses;
  auto* energy_cmd = app.add_subcommand("energy", "energy pairing of mass-zero divisors");
  energy_cmd->add_option("--mass", masses, "V:a, repeated")->required();
  energy_cmd->add_option("--with", with_masses, "second divisor, V:a, repeated");

  bool oracle = false;
  std::uint64_t seed = 42;
  std::size_t count = 50;
  auto* verify_cmd = app.add_subcommand("verify", "run the property suites");
  verify_cmd->add_flag("--oracle", oracle, "include spanning-tree equivalence");
  verify_cmd->add_option("--seed", seed, "random seed");
  verify_cmd->add_option("--count", count, "number of random graphs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  Output out;
  try {
    WeightedGraph g;
    if (!graph_path.empty()) {
      g = read_graph_file(graph_path);
      out.inputs["graph"] = graph_path;
    } else if (command != "verify") {
      throw Error(ErrorCode::ParseError, "--graph is required");
    }
    if (!graph_path.empty()) validate(g);

    if (command == "validate") {
      if (echo) {
        std::cout << graph_to_json(g).dump(2) << '\n';
        return 0;
      }
      const auto l = grounded_inverse(g, 0);
      out.result = ojson{{"valid", true},
                         {"vertices", g.vertex_count()},
                         {"edges", g.edge_count()},
                         {"cycle_rank", g.edge_count() - g.vertex_count() + 1},
                         {"condition_estimate", num(l.condition_estimate)}};
      out.tables.push_back({"", {"property", "value"},
                            {{"valid", "true"},
                             {"vertices", std::to_string(g.vertex_count())},
                             {"edges", std::to_string(g.edge_count())},
                             {"cycle_rank", std::to_string(g.edge_count() - g.vertex_count() + 1)},
                             {"condition_estimate", fmt(l.condition_estimate)}}});
    } else if (command == "resistance" || command == "jfun" || command == "cross") {
      static const std::vector<std::vector<std::string>> keys = {{"x", "y"}, {"q", "x", "y"}, {"x", "y", "z", "w"}};
      const auto& names = keys[pts.size() - 2];
      for (std::size_t i = 0; i < pts.size(); ++i) out.inputs[names[i]] = pts[i];
      const auto q = prepare(g, pts);
      const PotentialKernel kernel(q.model.graph, q.inverse);
      const auto& v = q.model.points;
      double value = 0.0;
      if (command == "resistance") value = kernel.resistance(v[0], v[1]);
      if (command == "jfun") value = kernel.j(v[0], v[1], v[2]);
      if (command == "cross") value = kernel.cross_ratio(v[0], v[1], v[2], v[3]);
      const auto inputs = out.inputs;
      out = scalar_out(command, value);
      out.inputs = inputs;
      note_condition(out, q.inverse);
    } else if (command == "xi") {
      const auto o = Orientation::standard(g);
      const PotentialKernel kernel(g);
      out.inputs["orientation"] = "standard";
      out.tables.emplace_back();
      matrix_out(kernel.xi(g, o), edge_labels(g), edge_labels(g), "edge", out.result, out.tables.back());
      note_condition(out, kernel.inverse());
    } else if (command == "project") {
      const auto o = Orientation::standard(g);
      const auto proj = projection_matrices(g, o);
      out.inputs["orientation"] = "standard";
      out.result = ojson::object();
      Table cycle{"cycle", {}, {}}, cocycle{"cocycle", {}, {}};
      matrix_out(proj.cycle, edge_labels(g), edge_labels(g), "edge", out.result["cycle"], cycle);
      matrix_out(proj.cocycle, edge_labels(g), edge_labels(g), "edge", out.result["cocycle"], cocycle);
      out.result["cycle_trace"] = num(proj.cycle.trace());
      out.tables = {cycle, cocycle, {"", {"quantity", "value"}, {{"cycle_trace", fmt(proj.cycle.trace())}}}};
      if (format == "csv") {
        // one headerful table: matrix name in the first column
        Table merged{"", {"matrix"}, {}};
        merged.header.insert(merged.header.end(), cycle.header.begin(), cycle.header.end());
        for (auto* t : {&cycle, &cocycle}) {
          for (auto r : t->rows) {
            r.insert(r.begin(), t->title);
            merged.rows.push_back(std::move(r));
          }
        }
        out.tables = {merged};
      }
    } else if (command == "kirchhoff") {
      const auto o = Orientation::standard(g);
      const VertexIndex x = g.vertex_index(from), y = g.vertex_index(to);
      const VertexIndex q = ground.empty() ? 0 : g.vertex_index(ground);
      out.inputs["from"] = from;
      out.inputs["to"] = to;
      out.inputs["amps"] = num(amps);
      out.inputs["ground"] = g.vertex_name(q);
      // Source: `amps` along a path from the entry vertex to the exit vertex.
      const OneChain source = amps * chain_of_path(g, o, shortest_hop_path(g, x, y));
      const auto sol = solve_kirchhoff(g, o, source, q);
      out.result = ojson{{"current", ojson::object()}, {"voltage", ojson::object()}, {"potential", ojson::object()}};
      Table edges{"edges", {"edge", "current", "voltage"}, {}};
      for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
        const double i = sol.current[e], v = sol.voltage(static_cast<Eigen::Index>(e));
        out.result["current"][g.edge(e).id] = num(i);
        out.result["voltage"][g.edge(e).id] = num(v);
        edges.rows.push_back({g.edge(e).id, fmt(i), fmt(v)});
      }
      Table vertices{"vertices", {"vertex", "potential"}, {}};
      for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
        const double p = sol.potential(static_cast<Eigen::Index>(v));
        out.result["potential"][g.vertex_name(v)] = num(p);
        vertices.rows.push_back({g.vertex_name(v), fmt(p)});
      }
      // v(e) = psi(e+) - psi(e-), so the exit vertex sits at the higher potential.
      const double r = std::abs(amps) > 0.0 ? (sol.potential(static_cast<Eigen::Index>(y)) -
                                                sol.potential(static_cast<Eigen::Index>(x))) / amps
                                             : 0.0;
      out.result["effective_resistance"] = num(r);
      if (format == "csv") {
        Table merged{"", {"kind", "label", "value"}, {}};
        for (const auto& row : edges.rows) {
          merged.rows.push_back({"current", row[0], row[1]});
        }
        for (const auto& row : edges.rows) {
          merged.rows.push_back({"voltage", row[0], row[2]});
        }
        for (const auto& row : vertices.rows) {
          merged.rows.push_back({"potential", row[0], row[1]});
        }
        out.tables = {merged};
      } else {
        out.tables = {edges, vertices};
      }
    } else if (command == "trees") {
      out.inputs["cap"] = cap;
      const auto ensemble = enumerate_spanning_trees(g, cap);
      const auto tol = tolerance_from_env();
      ojson list = ojson::array();
      Table t{"", {"tree", "edges", "weight", "coweight", "probability"}, {}};
      std::size_t k = 0;
      for (const auto& tree : ensemble.trees) {
        std::vector<std::string> ids;
        std::string joined;
        for (EdgeIndex e : tree.edges) {
          ids.push_back(g.edge(e).id);
          joined += (joined.empty() ? "" : " ") + g.edge(e).id;
        }
        const double p = tree_probability(ensemble, tree, tol);
        list.push_back(ojson{{"edges", ids},
                             {"weight", num(tree.weight)},
                             {"coweight", num(tree.coweight)},
                             {"probability", num(p)}});
        t.rows.push_back({std::to_string(++k), joined, fmt(tree.weight), fmt(tree.coweight), fmt(p)});
      }
      out.result = ojson{{"count", ensemble.trees.size()},
                         {"total_weight", num(ensemble.total_weight)},
                         {"total_coweight", num(ensemble.total_coweight)},
                         {"trees", list}};
      out.tables.push_back(t);
      if (format != "csv") {
        out.tables.push_back({"", {"quantity", "value"},
                              {{"count", std::to_string(ensemble.trees.size())},
                               {"total_weight", fmt(ensemble.total_weight)},
                               {"total_coweight", fmt(ensemble.total_coweight)}}});
      }
    } else if (command == "contract") {
      std::vector<std::string> contract_edges{first_edge};
      contract_edges.insert(contract_edges.end(), then_edges.begin(), then_edges.end());
      std::vector<EdgeIndex> edges;
      for (const auto& id : contract_edges) edges.push_back(g.edge_index(id));
      std::vector<ContractionQuery> parsed;
      for (const auto& text : queries) parsed.push_back(parse_query(g, text));
      out.inputs["edges"] = contract_edges;
      out.inputs["queries"] = queries;
      const auto steps = contraction_sequence(g, edges, parsed);
      ojson list = ojson::array();
      Table t{"", {"step", "contracted", "pivot", "query", "value", "correction"}, {}};
      for (std::size_t s = 0; s < steps.size(); ++s) {
        const auto& step = steps[s];
        const std::string edge = step.edge ? g.edge(*step.edge).id : "";
        ojson answers = ojson::array();
        for (std::size_t i = 0; i < queries.size(); ++i) {
          answers.push_back(ojson{{"query", queries[i]},
                                  {"value", num(step.answers[i])},
                                  {"correction", num(step.corrections[i])}});
          t.rows.push_back({std::to_string(s), edge.empty() ? "-" : edge,
                            step.edge ? fmt(step.pivot_resistance) : "-", queries[i], fmt(step.answers[i]),
                            fmt(step.corrections[i])});
        }
        if (queries.empty()) {
          t.rows.push_back({std::to_string(s), edge.empty() ? "-" : edge,
                            step.edge ? fmt(step.pivot_resistance) : "-", "-", "-", "-"});
        }
        ojson entry{{"contracted", step.edge ? ojson(edge) : ojson(nullptr)}};
        entry["pivot_resistance"] = step.edge ? num(step.pivot_resistance) : ojson(nullptr);
        entry["answers"] = answers;
        list.push_back(entry);
      }
      out.result = ojson{{"steps", list}};
      out.tables.push_back(t);
    } else if (command == "energy") {
      ojson echo_a, echo_b;
      const auto a = parse_divisor(g, masses, echo_a);
      const auto b = with_masses.empty() ? a : parse_divisor(g, with_masses, echo_b);
      out.inputs["mass"] = echo_a;
      if (!with_masses.empty()) out.inputs["with"] = echo_b;
      const PotentialKernel kernel(g);
      const auto inputs = out.inputs;
      out = scalar_out("energy", kernel.energy(a, b));
      out.inputs = inputs;
      note_condition(out, kernel.inverse());
    } else if (command == "verify") {
      VerifyOptions options;
      options.oracle = oracle;
      options.seed = seed;
      options.tol = tolerance_from_env();
      std::vector<WeightedGraph> corpus;
      if (!graph_path.empty()) {
        corpus.push_back(g);
      } else {
        corpus = random_corpus(seed, count);
        out.inputs["count"] = count;
      }
      out.inputs["seed"] = seed;
      out.inputs["oracle"] = oracle;
      const auto report = run_verification(corpus, options);
      ojson list = ojson::array();
      Table t{"", {"invariant", "status", "cases", "worst_deviation"}, {}};
      for (const auto& r : report.results) {
        ojson item{{"name", r.name}, {"passed", r.passed}, {"cases", r.cases},
                   {"worst_deviation", num(r.worst_deviation)}};
        if (!r.passed) item["first_failure"] = r.first_failure;
        list.push_back(item);
        t.rows.push_back({r.name, r.passed ? "pass" : "FAIL", std::to_string(r.cases), fmt(r.worst_deviation)});
      }
      out.result = ojson{{"passed", report.passed()}, {"invariants", list}};
      out.tables.push_back(t);
      emit(std::cout, command, out, format);
      if (!report.passed()) {
        throw VerificationFailure("invariant '" + *report.first_failure() + "' failed");
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failure: " << e.what() << '\n';
    return kExitVerify;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCompute;
  }

  emit(std::cout, command, out, format);
  return 0;
}
