// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numbers>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "support/generators.hpp"

using namespace splink;
using namespace splink::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string command = std::string(SPLINK_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buffer{};
  while (std::size_t n = fread(buffer.data(), 1, buffer.size(), pipe)) r.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(SPLINK_FIXTURES) + "/" + name; }

bool contains_line(const std::string& text, const std::string& line) {
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    if (l == line) return true;
  }
  return false;
}

Outcome range_chain() {
  const Run r = run_cli("--input " + fixture("example_chain.json") + " --terminals a,h range --trace");
  const bool ok = r.code == 0 && contains_line(r.out, "[3,5] ∩ [0,4] = [3,4]") &&
                  contains_line(r.out, "[3,4] ∘ [7,13] = [3,17]") && r.out.size() >= 6 &&
                  r.out.substr(r.out.size() - 6) == "[3,5]\n";
  std::string last = r.out.empty() ? std::string("?") : r.out.substr(r.out.rfind('['));
  if (!last.empty() && last.back() == '\n') last.pop_back();
  return {ok, "range " + last + " with [3,5] ∩ [0,4] = [3,4] and [3,4] ∘ [7,13] = [3,17] in the trace"};
}

Outcome verdict_chain() {
  const Run r = run_cli("--input " + fixture("example_chain.json") + " --json check");
  if (r.code != 0) return {false, "exit " + std::to_string(r.code)};
  const Json doc = Json::parse(r.out);
  bool split_ch = false, split_ah = false, p4 = false;
  for (const auto& e : doc["trace"]) {
    if (e["kind"] != "split") continue;
    if (e["terminals"] == Json::array({"c", "h"}) && e["R"] == Json::array({"3", "4"}) &&
        e["q_lengths"] == Json::array({"7/2", "1/6", "1/6", "1/6"}))
      split_ch = true;
    if (e["terminals"] == Json::array({"a", "h"}) && e["R"] == Json::array({"3", "5"})) {
      split_ah = true;
      for (const auto& p : e["paths"]) {
        if (p["lengths"] == Json::array({"7", "6"}) && p["nabla_text"] == "{1,13}" && p["meets_R"] == false) p4 = true;
      }
    }
  }
  const bool ok = doc["status"] == "disconnected" && split_ch && split_ah && p4;
  return {ok, "status " + doc["status"].get<std::string>() + ", R=[3,4] at (c,h), Q=(7/2,1/6,1/6,1/6), " +
                  "[L1,a,h]=[3,5], nabla(7,6)={1,13} misses"};
}

Outcome nabla_fixtures() {
  const std::string a = to_string(nabla({{1, 1, 1}}));
  const std::string b = to_string(nabla({{4, 1}}));
  const std::string c = to_string(nabla({{2, 2}}));
  return {a == "[1,3]" && b == "{3,5}" && c == "{0,4}", a + " " + b + " " + c};
}

Outcome q_gadget() {
  Rng rng(104);
  int checked = 0, bad = 0;
  while (checked < 1000) {
    Rational a = random_rational(rng, 0, 50, 13), b = random_rational(rng, 0, 50, 13);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    const PathSpec q = build_q(a, b);
    if (path_range(q) != Interval(a, b) || nabla(q) != IntervalSet({Interval(a, b)})) ++bad;
    ++checked;
  }
  return {bad == 0, std::to_string(checked) + " pairs, " + std::to_string(bad) + " mismatches"};
}

Outcome polygons() {
  Rng rng(105);
  int mismatches = 0;
  std::array<int, 3> counts{};
  for (int i = 0; i < 1000; ++i) {
    const int n = std::uniform_int_distribution<int>(3, 8)(rng);
    std::vector<Rational> lengths;
    for (int j = 0; j < n; ++j) lengths.push_back(Rational(std::uniform_int_distribution<int>(10, 1000)(rng), 100));
    const Status expected = polygon_status(lengths);
    ++counts[static_cast<int>(expected)];
    if (decide_connected(cycle_linkage(lengths)).status != expected) ++mismatches;
  }
  return {mismatches == 0, "1000 polygons (" + std::to_string(counts[0]) + " empty, " + std::to_string(counts[1]) +
                               " connected, " + std::to_string(counts[2]) + " disconnected), " +
                               std::to_string(mismatches) + " mismatches"};
}

Outcome cycle_corollary() {
  Rng rng(106);
  int checked = 0, mismatches = 0, yes = 0;
  while (checked < 200) {
    const Linkage l = random_sp(rng, std::uniform_int_distribution<std::size_t>(2, 10)(rng), Lengths::Uniform);
    CycleCheck c;
    try {
      c = polygonal_sublinkage_check(l);
    } catch (const BudgetExceeded&) {
      continue;
    }
    const bool r = realisable(l).realisable;
    yes += r;
    mismatches += c.all_realisable != r;
    ++checked;
  }
  return {mismatches == 0, std::to_string(checked) + " linkages (" + std::to_string(yes) + " realisable), " +
                               std::to_string(mismatches) + " mismatches"};
}

Outcome fiber_vs_nabla() {
  Rng rng(107);
  int probes = 0, mismatches = 0, inside = 0;
  for (int path = 0; path < 50; ++path) {
    PathSpec p;
    const int k = path % 2 == 0 ? 3 : 4;
    for (int i = 0; i < k; ++i) p.lengths.push_back(random_rational(rng, 1, 10, 4));
    const IntervalSet set = nabla(p);
    const Interval range = path_range(p);
    const double band = 2 * to_double(p.total()) * 2 * std::numbers::pi / 200;
    for (int j = 0; j < 10; ++j) {
      std::optional<Rational> x;
      for (int attempt = 0; attempt < 200 && !x; ++attempt) {
        const Rational candidate = random_between(rng, range.lo(), range.hi(), 256);
        bool near = false;
        for (const auto& b : set.boundary()) near = near || std::abs(to_double(candidate - b)) < band;
        if (!near) x = candidate;
      }
      if (!x) continue;
      const bool in_nabla = set.contains(*x);
      inside += in_nabla;
      const auto fiber = fiber_components({p, to_double(*x), 200});
      mismatches += (fiber.components == 1) != in_nabla;
      ++probes;
    }
  }
  return {mismatches == 0 && probes >= 450, std::to_string(probes) + " probes (" + std::to_string(inside) +
                                                " inside nabla), " + std::to_string(mismatches) + " mismatches"};
}

Outcome verdict_vs_sampling() {
  SampleOptions options;
  options.samples = 20000;
  options.seed = 2024;
  std::vector<Linkage> instances{parse_linkage([] {
    std::ifstream in(fixture("example_chain.json"));
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }())};
  Rng rng(108);
  while (instances.size() < 21) instances.push_back(random_sp(rng, std::uniform_int_distribution<std::size_t>(2, 8)(rng)));
  int mismatches = 0, disconnected = 0;
  for (const auto& l : instances) {
    const bool d = decide_connected(l).status == Status::Disconnected;
    disconnected += d;
    const bool split = sample_moduli(l, options).components >= 2;
    mismatches += d != split;
  }
  return {mismatches == 0, std::to_string(instances.size()) + " linkages (" + std::to_string(disconnected) +
                               " disconnected), " + std::to_string(mismatches) + " disagreements"};
}

Outcome synthesis() {
  Rng rng(109);
  double worst = 0, worst_terminal = 0;
  for (int i = 0; i < 1000; ++i) {
    const Linkage l = random_sp(rng, std::uniform_int_distribution<std::size_t>(1, 14)(rng));
    const SPTree tree = build_sp_tree(l, l.terminals);
    const Interval range = linkage_range(tree);
    const Rational x = random_between(rng, range.lo(), range.hi(), 97);
    const Realisation r = synthesize(tree, x);
    worst = std::max(worst, verify(l, r));
    const Point s = r.placement.at("s"), t = r.placement.at("t");
    worst_terminal = std::max(worst_terminal, std::abs(std::hypot(s.x - t.x, s.y - t.y) - to_double(x)));
  }
  std::ostringstream detail;
  detail << "1000 linkages, max edge error " << worst << ", max terminal error " << worst_terminal;
  return {worst < 1e-9 && worst_terminal < 1e-9, detail.str()};
}

Outcome algebra_laws() {
  Rng rng(110);
  auto interval = [&] {
    const Rational a = random_rational(rng, 0, 20, 9), b = random_rational(rng, 0, 20, 9);
    return Interval(std::min(a, b), std::max(a, b));
  };
  int failures = 0;
  for (int i = 0; i < 10000; ++i) {
    const Interval a = interval(), b = interval(), c = interval();
    if (series_compose(a, b) != series_compose(b, a)) ++failures;
    if (series_compose(series_compose(a, b), c) != series_compose(a, series_compose(b, c))) ++failures;
    const bool zero_based = series_compose(a, b) == Interval(0, a.hi() + b.hi());
    if (zero_based != !intersect(a, b).is_empty()) ++failures;
    PathSpec p;
    const int k = std::uniform_int_distribution<int>(1, 7)(rng);
    for (int j = 0; j < k; ++j) p.lengths.push_back(random_rational(rng, 0, 12, 5));
    if (path_range_fold(p) != path_range_closed_form(p)) ++failures;
  }
  return {failures == 0, "10000 draws, " + std::to_string(failures) + " failures"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_seconds;
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria{
      {"range of the example chain, exact trace", 1, range_chain},
      {"verdict of the example chain, exact trace", 1, verdict_chain},
      {"nabla fixtures", 0, nabla_fixtures},
      {"Q gadget range and nabla", 0, q_gadget},
      {"polygon equivalence", 30, polygons},
      {"cycle check agrees with realisability", 0, cycle_corollary},
      {"fibre oracle agrees with nabla", 300, fiber_vs_nabla},
      {"verdict agrees with moduli sampling", 300, verdict_vs_sampling},
      {"synthesis soundness", 0, synthesis},
      {"interval algebra laws", 0, algebra_laws},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = o.pass;
    if (c.budget_seconds > 0 && seconds >= c.budget_seconds) {
      pass = false;
      o.detail += ", over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
    }
    failed += !pass;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2f s", seconds);
    std::cout << "AC" << i + 1 << (i + 1 < 10 ? "  " : " ") << (pass ? "PASS" : "FAIL") << "  " << c.name << ": "
              << o.detail << " (" << timing << ")" << std::endl;
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
