#include "hbtop/cli/app.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "hbtop/cli/generators.hpp"
#include "hbtop/error.hpp"
#include "hbtop/handlebody.hpp"
#include "hbtop/homology.hpp"
#include "hbtop/rgb.hpp"
#include "../text_util.hpp"

namespace hbtop::cli {

using nlohmann::json;

namespace {

/// A user-facing failure: bad input, bad bounds, unknown command.
struct InputError : std::runtime_error {
  std::string path;
  std::size_t line = 0;
  InputError(std::string what, std::string p = {}, std::size_t l = 0)
      : std::runtime_error(std::move(what)), path(std::move(p)), line(l) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file", path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Parse>
auto parse_file(const std::string& path, Parse parse) {
  std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError(e.what(), path, e.line());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what(), path);
  }
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

enum class InputKind { Complex, Poset, Marked };

InputKind kind_of(const std::string& path) {
  if (ends_with(path, ".cx")) return InputKind::Complex;
  if (ends_with(path, ".hasse") || ends_with(path, ".poset")) return InputKind::Poset;
  if (ends_with(path, ".marked")) return InputKind::Marked;
  throw InputError("unrecognised input extension (expected .cx, .hasse, .poset or .marked)", path);
}

/// Runs f(0..n-1) on the given number of threads; results keep index order
/// and the lowest-index exception is rethrown.
std::vector<json> parallel_map(std::size_t n, unsigned workers, const std::function<json(std::size_t)>& f) {
  std::vector<json> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

void require_count(const RunConfig& c) {
  if (c.count < 1 || c.count > kMaxCount)
    throw InputError("--count must lie in 1.." + std::to_string(kMaxCount));
}

struct Tally {
  std::size_t verified = 0, skipped = 0, violated = 0;

  void add(bool violated_here, Conclusion c) {
    if (violated_here)
      ++violated;
    else if (c == Conclusion::Verified)
      ++verified;
    else
      ++skipped;
  }
  json to_json(std::size_t total) const {
    return {{"instances", total},
            {"verified", verified},
            {"skipped", skipped},
            {"violated", violated},
            {"verified_fraction", total ? static_cast<double>(verified) / static_cast<double>(total) : 0.0}};
  }
};

Conclusion conclusion_from(const json& report) {
  const std::string c = report.at("conclusion");
  if (c == "verified") return Conclusion::Verified;
  if (c == "violated") return Conclusion::Violated;
  return Conclusion::Skipped;
}

/// A report counts as violated if its conclusion is, or if an attached
/// recolouring audit found a non-monotone step.
bool report_violated(const json& report) {
  if (conclusion_from(report) == Conclusion::Violated) return true;
  if (!report.contains("details")) return false;
  const auto& d = report["details"];
  return d.contains("recolouring") && !d["recolouring"].at("all_monotone").get<bool>();
}

struct Outcome {
  json config = json::object();
  json payload;
  json summary = json::object();
  bool violated = false;
};

// ---------------------------------------------------------------------------

Outcome cmd_homology(const RunConfig& c) {
  if (c.inputs.empty()) throw InputError("homology needs at least one --in file");
  Outcome o;
  o.config = {{"inputs", c.inputs}};
  json items = json::array();
  for (const auto& path : c.inputs) {
    json item{{"path", path}};
    GradedHomology h;
    switch (kind_of(path)) {
      case InputKind::Complex: {
        SimplicialComplex k = parse_file(path, parse_complex);
        h = reduced_homology(k);
        item["kind"] = "complex";
        item["vertices"] = k.vertex_count();
        item["facets"] = k.facets().size();
        item["dimension"] = k.dimension();
        break;
      }
      case InputKind::Poset: {
        Poset p = parse_file(path, parse_hasse);
        h = reduced_homology(order_complex(p));
        item["kind"] = "poset";
        item["elements"] = p.size();
        item["covers"] = p.covers().size();
        break;
      }
      case InputKind::Marked: throw InputError("homology takes complexes and posets, not marked complexes", path);
    }
    item["homology"] = to_json(h);
    item["homology_text"] = h.to_string();
    item["euler_characteristic"] = h.euler_characteristic();
    items.push_back(std::move(item));
  }
  o.payload = {{"inputs", items}};
  o.summary = {{"inputs", items.size()}};
  return o;
}

Outcome cmd_rgb_check(const RunConfig& c, unsigned workers) {
  Outcome o;
  std::vector<json> results;
  if (!c.inputs.empty()) {
    o.config = {{"inputs", c.inputs}};
    std::vector<MarkedComplex> ms;
    for (const auto& path : c.inputs) {
      if (kind_of(path) != InputKind::Marked) throw InputError("rgb-check takes .marked files", path);
      ms.push_back(parse_file(path, parse_marked));
    }
    results = parallel_map(ms.size(), workers, [&](std::size_t i) {
      return json{{"index", i}, {"source", c.inputs[i]}, {"report", to_json(check_marked(ms[i]))}};
    });
  } else {
    require_count(c);
    if (c.max_vertices < 1 || c.max_vertices > 5) throw InputError("--max-vertices must lie in 1..5");
    o.config = {{"seed", c.seed}, {"count", c.count}, {"max_vertices", c.max_vertices}};
    results = parallel_map(c.count, workers, [&](std::size_t i) {
      std::uint64_t s = instance_seed(c.seed, i);
      Rng rng(s);
      MarkedComplex m = random_marked_complex(rng, c.max_vertices);
      return json{{"index", i}, {"seed", s}, {"marked", format_marked(m)}, {"report", to_json(check_marked(m))}};
    });
  }
  Tally t;
  std::size_t non_monotone = 0;
  for (const auto& r : results) {
    bool v = report_violated(r["report"]);
    t.add(v, conclusion_from(r["report"]));
    non_monotone += r["report"]["details"].value("recolouring", json::object()).value("non_monotone", json::array()).size();
  }
  o.violated = t.violated > 0;
  o.payload = {{"instances", results}};
  o.summary = t.to_json(results.size());
  o.summary["non_monotone_steps"] = non_monotone;
  return o;
}

Outcome cmd_lemma_suite(const RunConfig& c, unsigned workers) {
  if (!is_lemma_id(c.lemma)) {
    std::string known;
    for (const auto& id : lemma_ids()) known += (known.empty() ? "" : ", ") + id;
    throw InputError("unknown lemma '" + c.lemma + "' (known: " + known + ")");
  }
  require_count(c);
  Outcome o;
  o.config = {{"lemma", c.lemma}, {"seed", c.seed}, {"count", c.count}};
  auto results = parallel_map(c.count, workers, [&](std::size_t i) {
    std::uint64_t s = instance_seed(c.seed, i);
    return json{{"index", i}, {"seed", s}, {"report", to_json(run_lemma_instance(c.lemma, s))}};
  });
  Tally t;
  for (const auto& r : results) t.add(report_violated(r["report"]), conclusion_from(r["report"]));
  o.violated = t.violated > 0;
  o.payload = {{"lemma", c.lemma}, {"instances", results}};
  o.summary = t.to_json(results.size());
  return o;
}

Outcome cmd_dims(const RunConfig& c) {
  if (c.gmax < 0 || c.gmax > kMaxTableGenus || c.bmax < 0 || c.bmax > kMaxTableMarks || c.pmax < 0 ||
      c.pmax > kMaxTableMarks)
    throw InputError("dims bounds: 0 <= gmax <= " + std::to_string(kMaxTableGenus) + ", 0 <= bmax, pmax <= " +
                     std::to_string(kMaxTableMarks));
  Outcome o;
  o.config = {{"gmax", c.gmax}, {"bmax", c.bmax}, {"pmax", c.pmax}};
  json rows = json::array();
  std::size_t checked = 0, failed = 0, skipped = 0;
  auto tally = [&](const IdentityReport& r) {
    for (const auto& ch : r.checks) {
      if (ch.status == IdentityCheck::Status::Skipped)
        ++skipped;
      else
        ++checked;
      if (ch.status == IdentityCheck::Status::Fails) ++failed;
    }
  };
  for (int g = 0; g <= c.gmax; ++g)
    for (int b = 0; b <= c.bmax; ++b)
      for (int p = 0; p <= c.pmax; ++p) {
        HandlebodySignature sig{g, b, p};
        if (!sig.valid()) continue;
        json row{{"g", g}, {"b", b}, {"p", p}, {"vcd", vcd(sig)}, {"ambient_dimension", ambient_dimension(sig)}};
        if (g > 0) {
          row["nu"] = nu(sig);
          auto d = duality_bookkeeping(sig);
          tally(d);
          row["duality"] = to_json(d);
        }
        auto bi = birman_identities(sig);
        tally(bi);
        row["birman"] = to_json(bi);
        rows.push_back(std::move(row));
      }
  o.violated = failed > 0;
  o.payload = {{"rows", rows}};
  o.summary = {{"signatures", rows.size()},
               {"identities_checked", checked},
               {"identities_failed", failed},
               {"identities_skipped", skipped}};
  return o;
}

Outcome cmd_cutdata(const RunConfig& c) {
  if (c.genus < 1 || c.genus > kMaxCutGenus || c.kmax < 1 || c.kmax > kMaxCutDiscs)
    throw InputError("cutdata bounds: 1 <= g <= " + std::to_string(kMaxCutGenus) + ", 1 <= kmax <= " +
                     std::to_string(kMaxCutDiscs));
  Outcome o;
  o.config = {{"g", c.genus}, {"kmax", c.kmax}};
  json items = json::array();
  std::size_t invalid = 0, mismatched = 0;
  std::map<std::size_t, std::size_t> by_t;
  int max_dim = -2;
  for (const auto& cut : enumerate_cut_data(c.genus, c.kmax)) {
    auto report = validate_cut_data(cut, c.genus);
    int expected = 2 * c.genus - 4 - static_cast<int>(cut.t());
    json item{{"cut", to_json(cut)}, {"s", cut.s()}, {"t", cut.t()}, {"validation", to_json(report)},
              {"expected_dimension", expected}};
    if (!report.valid()) {
      ++invalid;
    } else {
      try {
        WedgeOfSpheres w = link_type(cut, c.genus);
        item["link_type"] = to_json(w);
        max_dim = std::max(max_dim, w.q);
        if (w.q > 2 * c.genus - 4) ++mismatched;
      } catch (const std::logic_error& e) {
        item["link_error"] = e.what();
        ++mismatched;
      }
    }
    ++by_t[cut.t()];
    items.push_back(std::move(item));
  }
  json t_counts = json::object();
  for (auto [t, n] : by_t) t_counts[std::to_string(t)] = n;
  o.violated = invalid + mismatched > 0;
  o.payload = {{"cuts", items}};
  o.summary = {{"count", items.size()},
               {"invalid", invalid},
               {"dimension_mismatches", mismatched},
               {"by_zero_pieces", t_counts},
               {"max_link_dimension", max_dim},
               {"dimension_bound", 2 * c.genus - 4}};
  return o;
}

/// `<element> <v1> ... <vn>` per line labels the face {v1..vn}; every face
/// of the complex must be labelled exactly once.
Stratification parse_labels(const SimplicialComplex& k, const Poset& p, const std::string& text,
                            const std::string& path) {
  std::map<std::vector<Vertex>, Index> assigned;
  for (const auto& line : detail::tokenize(text)) {
    const auto& t = line.tokens;
    auto elem = p.find(t[0]);
    if (!elem) throw InputError("unknown poset element '" + t[0] + "'", path, line.number);
    if (t.size() < 2) throw InputError("label line names no vertices", path, line.number);
    std::vector<Vertex> face;
    for (std::size_t i = 1; i < t.size(); ++i) {
      auto v = k.find_vertex(t[i]);
      if (!v) throw InputError("unknown vertex '" + t[i] + "'", path, line.number);
      face.push_back(*v);
    }
    std::sort(face.begin(), face.end());
    if (std::adjacent_find(face.begin(), face.end()) != face.end())
      throw InputError("repeated vertex", path, line.number);
    if (!assigned.emplace(face, *elem).second) throw InputError("face labelled twice", path, line.number);
  }
  FaceLattice lattice = k.faces();
  std::size_t total = 0;
  for (const auto& list : lattice.by_dim) {
    total += list.size();
    for (std::size_t i = 0; i < list.size(); ++i)
      if (!assigned.count(std::vector<Vertex>(list[i].begin(), list[i].end()))) {
        std::string name;
        for (Vertex v : list[i]) name += (name.empty() ? "" : " ") + k.vertex_ids()[v];
        throw InputError("face {" + name + "} has no label", path);
      }
  }
  if (total != assigned.size()) throw InputError("a labelled vertex set is not a face of the complex", path);
  return Stratification::from_function(k, p, [&](std::span<const Vertex> f) {
    return assigned.at(std::vector<Vertex>(f.begin(), f.end()));
  });
}

Outcome cmd_strat_check(const RunConfig& c, unsigned workers) {
  Outcome o;
  std::vector<json> results;
  if (!c.inputs.empty()) {
    if (c.inputs.size() != 1) throw InputError("strat-check takes one --in file");
    const std::string& path = c.inputs.front();
    o.config = {{"inputs", c.inputs}};
    Stratification s;
    std::string mode;
    if (!c.poset_input.empty() || !c.labels_input.empty()) {
      if (c.poset_input.empty() || c.labels_input.empty())
        throw InputError("explicit labelling needs both --poset and --labels");
      if (kind_of(path) != InputKind::Complex) throw InputError("explicit labelling needs a .cx complex", path);
      SimplicialComplex k = parse_file(path, parse_complex);
      Poset p = parse_file(c.poset_input, parse_hasse);
      s = parse_labels(k, p, read_file(c.labels_input), c.labels_input);
      o.config["poset"] = c.poset_input;
      o.config["labels"] = c.labels_input;
      mode = "explicit labels";
    } else if (kind_of(path) == InputKind::Complex) {
      s = face_stratification(parse_file(path, parse_complex));
      mode = "complex over its face poset";
    } else if (kind_of(path) == InputKind::Poset) {
      s = chain_max_stratification(parse_file(path, parse_hasse));
      mode = "order complex labelled by chain maxima";
    } else {
      throw InputError("strat-check takes a .cx complex or a .hasse poset", path);
    }
    LemmaReport r = check_stratification(s);
    r.instance = mode;
    results.push_back({{"index", 0}, {"source", path}, {"report", to_json(r)}});
  } else {
    require_count(c);
    o.config = {{"seed", c.seed}, {"count", c.count}};
    results = parallel_map(c.count, workers, [&](std::size_t i) {
      std::uint64_t s = instance_seed(c.seed, i);
      return json{{"index", i}, {"seed", s}, {"report", to_json(run_lemma_instance("stratification", s))}};
    });
  }
  Tally t;
  for (const auto& r : results) t.add(report_violated(r["report"]), conclusion_from(r["report"]));
  o.violated = t.violated > 0;
  o.payload = {{"instances", results}};
  o.summary = t.to_json(results.size());
  return o;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"homology", "rgb-check", "lemma-suite", "dims", "cutdata", "strat-check"};
  return names;
}

unsigned default_workers() {
  if (const char* env = std::getenv("HBTOP_WORKERS")) {
    char* end = nullptr;
    unsigned long n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && n >= 1 && n <= 1024) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunResult run(const RunConfig& config) {
  const unsigned workers = config.workers ? config.workers : default_workers();
  RunResult result;
  json report{{"command", config.command}};
  try {
    Outcome o;
    if (config.command == "homology")
      o = cmd_homology(config);
    else if (config.command == "rgb-check")
      o = cmd_rgb_check(config, workers);
    else if (config.command == "lemma-suite")
      o = cmd_lemma_suite(config, workers);
    else if (config.command == "dims")
      o = cmd_dims(config);
    else if (config.command == "cutdata")
      o = cmd_cutdata(config);
    else if (config.command == "strat-check")
      o = cmd_strat_check(config, workers);
    else
      throw InputError("unknown command '" + config.command + "'");
    report["config"] = std::move(o.config);
    report["status"] = o.violated ? "violated" : "ok";
    report["payload"] = std::move(o.payload);
    report["summary"] = std::move(o.summary);
    result.exit_code = o.violated ? 1 : 0;
  } catch (const InputError& e) {
    json err{{"message", e.what()}};
    if (!e.path.empty()) err["path"] = e.path;
    if (e.line) err["line"] = e.line;
    report["config"] = json::object();
    report["status"] = "error";
    report["payload"] = nullptr;
    report["summary"] = json::object();
    report["error"] = std::move(err);
    result.exit_code = 2;
  } catch (const std::exception& e) {
    report["config"] = json::object();
    report["status"] = "error";
    report["payload"] = nullptr;
    report["summary"] = json::object();
    report["error"] = {{"message", std::string("internal error: ") + e.what()}};
    result.exit_code = 2;
  }
  result.report = std::move(report);
  return result;
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

int run_and_write(const RunConfig& config) {
  RunResult r = run(config);
  const std::string text = render(r.report);
  if (config.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(config.output, std::ios::binary);
    if (!out || !(out << text)) {
      std::cerr << "hbtop: cannot write " << config.output << "\n";
      return 2;
    }
  }
  if (r.report["status"] == "error") std::cerr << "hbtop: " << r.report["error"].dump() << "\n";
  return r.exit_code;
}

std::vector<std::string> validate_report_shape(const json& report) {
  std::vector<std::string> problems;
  if (!report.is_object()) return {"report is not an object"};
  for (const char* key : {"command", "config", "status", "payload", "summary"})
    if (!report.contains(key)) problems.push_back(std::string("missing key '") + key + "'");
  if (!problems.empty()) return problems;
  if (!report["command"].is_string()) problems.push_back("'command' is not a string");
  if (!report["config"].is_object()) problems.push_back("'config' is not an object");
  if (!report["summary"].is_object()) problems.push_back("'summary' is not an object");
  const json& status = report["status"];
  if (!status.is_string() || (status != "ok" && status != "violated" && status != "error")) {
    problems.push_back("'status' is not one of ok, violated, error");
    return problems;
  }
  const bool error = status == "error";
  if (error != report.contains("error")) problems.push_back("'error' must be present exactly when status is error");
  if (error && !(report["error"].is_object() && report["error"].contains("message")))
    problems.push_back("'error' lacks a message");
  if (error != report["payload"].is_null()) problems.push_back("'payload' must be null exactly when status is error");
  for (auto it = report.begin(); it != report.end(); ++it)
    if (it.key() != "command" && it.key() != "config" && it.key() != "status" && it.key() != "payload" &&
        it.key() != "summary" && it.key() != "error")
      problems.push_back("unexpected key '" + it.key() + "'");
  return problems;
}

}  // namespace hbtop::cli
