// End-to-end checks for the command line tool: spawns the binary given as
// argv[1], validates every report against the checked-in schemas, and checks
// exit codes, determinism, and the thread-count invariance of the solvers.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

using nlohmann::json;

namespace {

int g_failures = 0;

#define EXPECT(cond)                                                               \
  do {                                                                             \
    if (!(cond)) {                                                                 \
      ++g_failures;                                                                \
      std::cerr << "FAIL " << __FILE__ << ":" << __LINE__ << "  " #cond << "\n";   \
    }                                                                              \
  } while (0)

#define EXPECT_EQ(a, b)                                                            \
  do {                                                                             \
    const auto va = (a);                                                           \
    const auto vb = (b);                                                           \
    if (!(va == vb)) {                                                             \
      ++g_failures;                                                                \
      std::cerr << "FAIL " << __FILE__ << ":" << __LINE__ << "  " #a " == " #b     \
                << "  (" << va << " vs " << vb << ")\n";                           \
    }                                                                              \
  } while (0)

std::string g_binary;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  const std::string cmd = env_prefix + (env_prefix.empty() ? "" : " ") + "'" + g_binary + "' " +
                          args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    std::cerr << "popen failed for: " << cmd << "\n";
    ++g_failures;
    return res;
  }
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    ++g_failures;
    return "{}";
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// Structural validator for the schema subset the checked-in files use:
// type, required, properties, items, enum.
void validate(const json& schema, const json& value, const std::string& path,
              std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const std::string t = schema["type"];
    bool ok = (t == "object" && value.is_object()) || (t == "array" && value.is_array()) ||
              (t == "string" && value.is_string()) || (t == "boolean" && value.is_boolean()) ||
              (t == "integer" && value.is_number_integer()) || (t == "number" && value.is_number());
    if (!ok) {
      errors.push_back(path + ": expected " + t);
      return;
    }
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& v : schema["enum"])
      if (v == value) found = true;
    if (!found) errors.push_back(path + ": value not in enum");
  }
  if (schema.contains("required"))
    for (const auto& key : schema["required"])
      if (!value.contains(key.get<std::string>()))
        errors.push_back(path + ": missing required key " + key.get<std::string>());
  if (schema.contains("properties") && value.is_object())
    for (const auto& [key, sub] : schema["properties"].items())
      if (value.contains(key)) validate(sub, value[key], path + "." + key, errors);
  if (schema.contains("items") && value.is_array())
    for (size_t i = 0; i < value.size(); ++i)
      validate(schema["items"], value[i], path + "[" + std::to_string(i) + "]", errors);
}

json load_schema(const std::string& name) {
  return json::parse(slurp(std::string(SYNCPARSE_SCHEMA_DIR) + "/" + name + ".json"));
}

// Parses the report, then validates it against the command schema (or the
// error schema when an error payload is present).
json check_report(const RunResult& res, const std::string& command) {
  json rep;
  try {
    rep = json::parse(res.out);
  } catch (const std::exception& e) {
    ++g_failures;
    std::cerr << "FAIL report is not JSON for " << command << ": " << e.what() << "\n";
    return json::object();
  }
  const bool errored = rep.contains("error");
  const json schema = load_schema(errored ? "error" : command);
  std::vector<std::string> errors;
  validate(schema, rep, "$", errors);
  for (const auto& e : errors) {
    ++g_failures;
    std::cerr << "FAIL schema (" << command << "): " << e << "\n";
  }
  if (!errored) EXPECT_EQ(res.exit_code, 0);
  if (errored) EXPECT(res.exit_code != 0);
  return rep;
}

std::string fixture(const std::string& name) {
  return std::string(SYNCPARSE_FIXTURE_DIR) + "/" + name;
}

std::string without_wall_time(json rep) {
  rep.erase("wall_time_seconds");
  return rep.dump();
}

// ----------------------------------------------------------------- cases

void test_analyze() {
  auto res = run_cli("analyze 614253");
  json rep = check_report(res, "analyze");
  EXPECT_EQ(rep["result"]["fo"], json({2, 3, 4, 3, 2, 2}));
  EXPECT_EQ(rep["result"]["space_exponent"], 8);
  EXPECT_EQ(rep["result"]["time_exponent"], 9);
  EXPECT_EQ(rep["inputs"]["strategy"], json({1, 2, 3, 4, 5, 6}));

  res = run_cli("analyze 614253 --strategy 452316");
  rep = check_report(res, "analyze");
  EXPECT_EQ(rep["result"]["max_fo"], 3);
  EXPECT_EQ(rep["result"]["time_exponent"], 8);
  EXPECT_EQ(rep["result"]["delta"][2], 2);

  // Same command twice: identical bytes apart from the wall time.
  auto again = run_cli("analyze 614253 --strategy 452316");
  EXPECT_EQ(without_wall_time(rep), without_wall_time(json::parse(again.out)));

  // Comma-separated entries name the same permutation as the digit form.
  res = run_cli("analyze 6,1,4,2,5,3");
  EXPECT_EQ(check_report(res, "analyze")["result"]["fo"], json({2, 3, 4, 3, 2, 2}));

  // Not a permutation.
  res = run_cli("analyze 613253");
  check_report(res, "analyze");
  EXPECT_EQ(res.exit_code, 2);
}

void test_optimize() {
  auto res = run_cli("optimize 614253 --objective space");
  json rep = check_report(res, "optimize");
  EXPECT_EQ(rep["result"]["value"], 3);
  EXPECT_EQ(rep["result"]["space_exponent"], 6);

  res = run_cli("optimize 614253 --objective time");
  rep = check_report(res, "optimize");
  EXPECT_EQ(rep["result"]["value"], 8);
  EXPECT_EQ(rep["result"]["time_exponent"], 8);

  res = run_cli("optimize 52341 --objective time --oracle");
  rep = check_report(res, "optimize");
  EXPECT_EQ(rep["result"]["oracle_agrees"], true);
  EXPECT_EQ(rep["result"]["oracle_value"], rep["result"]["value"]);

  res = run_cli("optimize 614253 --objective width");
  EXPECT_EQ(res.exit_code, 2);
}

void test_cutwidth() {
  auto res = run_cli("cutwidth --perm 614253 --variant cw");
  json rep = check_report(res, "cutwidth");
  EXPECT_EQ(rep["result"]["value"], 5);
  EXPECT_EQ(rep["result"]["witness_order"].size(), 6u);

  res = run_cli("cutwidth --perm 614253 --variant ecw");
  EXPECT_EQ(check_report(res, "cutwidth")["result"]["value"], 6);

  res = run_cli("cutwidth --perm 614253 --variant emcw");
  EXPECT_EQ(check_report(res, "cutwidth")["result"]["value"], 4);

  // Graph input: the doubled three-vertex path.
  const std::string path = "/tmp/syncparse_cli_doubled_path.graph";
  {
    std::ofstream out(path);
    out << "3 2\n1 2 2\n2 3 2\nE: 1 1 3 3\n";
  }
  res = run_cli("cutwidth --graph '" + path + "' --variant ecw");
  EXPECT_EQ(check_report(res, "cutwidth")["result"]["value"], 4);

  // Exactly one input source.
  res = run_cli("cutwidth --perm 614253 --graph '" + path + "' --variant cw");
  check_report(res, "cutwidth");
  EXPECT_EQ(res.exit_code, 2);
  res = run_cli("cutwidth --variant cw");
  EXPECT_EQ(res.exit_code, 2);

  // Above the solver limit.
  res = run_cli("cutwidth --perm 12 --limit 1");
  json limited = check_report(res, "cutwidth");
  EXPECT_EQ(res.exit_code, 3);
  EXPECT_EQ(limited["error"]["type"], "limit");
}

void test_cutwidth_threads() {
  // Large enough to hit the parallel fill (2^16 subsets); any thread count
  // must produce identical bytes.
  const std::string perm = "16,1,14,3,12,5,10,7,8,9,6,11,4,13,2,15";
  auto one = run_cli("cutwidth --perm '" + perm + "' --variant cw --threads 1");
  auto four = run_cli("cutwidth --perm '" + perm + "' --variant cw --threads 4");
  json rep1 = check_report(one, "cutwidth");
  json rep4 = check_report(four, "cutwidth");
  EXPECT_EQ(rep1["inputs"]["threads"], 1);
  EXPECT_EQ(rep4["inputs"]["threads"], 4);
  rep1["inputs"].erase("threads");
  rep4["inputs"].erase("threads");
  EXPECT_EQ(without_wall_time(rep1), without_wall_time(rep4));
}

void test_reduce() {
  const std::string k4 = "'" + fixture("k4.graph") + "'";
  auto res = run_cli("reduce " + k4 + " 4 --scale 1 --verify --sweep");
  json rep = check_report(res, "reduce");
  const json& manifest = rep["result"]["manifest"];
  EXPECT_EQ(manifest["faithful"], false);
  EXPECT_EQ(manifest["k_prime"], 46);
  EXPECT_EQ(manifest["total_vertices"], 2553);
  EXPECT_EQ(manifest["explicit_edges"], 78);
  EXPECT_EQ(rep["result"]["verification"]["ok"], true);
  EXPECT_EQ(rep["result"]["sweep"]["cut"], 4);
  EXPECT_EQ(rep["result"]["sweep"]["bisection_v1"], json({1, 2}));
  EXPECT(rep["result"]["sweep"]["max_width"].get<long long>() >= 46);

  // Explicit bisection, edge dump, and permutation extraction.
  res = run_cli("reduce " + k4 + " 4 --scale 1 --sweep --bisection '1,3|2,4' "
                "--dump-edges --emit-permutation");
  rep = check_report(res, "reduce");
  EXPECT_EQ(rep["result"]["sweep"]["bisection_v1"], json({1, 3}));
  EXPECT_EQ(rep["result"]["edges"].size(), 78u);
  const auto& image = rep["result"]["permutation"];
  EXPECT_EQ(image.size(), 2553u);
  {
    std::vector<char> seen(image.size(), 0);
    bool bijective = true;
    for (const auto& v : image) {
      const long long x = v.get<long long>();
      if (x < 1 || x > static_cast<long long>(image.size()) || seen[x - 1]) bijective = false;
      else seen[x - 1] = 1;
    }
    EXPECT(bijective);
  }

  // k must be positive.
  res = run_cli("reduce " + k4 + " 0 --scale 1");
  check_report(res, "reduce");
  EXPECT_EQ(res.exit_code, 2);

  // The memory cap refuses the run before any heavy pass.
  res = run_cli("reduce " + k4 + " 4 --scale 2 --verify", "SYNCPARSE_MEMORY_LIMIT=1M");
  json capped = check_report(res, "reduce");
  EXPECT_EQ(res.exit_code, 3);
  EXPECT_EQ(capped["error"]["type"], "limit");

  // A generous cap lets the same run through.
  res = run_cli("reduce " + k4 + " 4 --scale 2", "SYNCPARSE_MEMORY_LIMIT=2G");
  EXPECT_EQ(check_report(res, "reduce")["result"]["manifest"]["total_vertices"], 35745);
}

void test_parse() {
  const std::string running = "'" + fixture("running.sg") + "'";
  auto res = run_cli("parse " + running + " abcd dcba");
  json rep = check_report(res, "parse");
  EXPECT_EQ(rep["result"]["accepted"], true);
  EXPECT(rep["result"]["states_per_step"].is_array());

  res = run_cli("parse " + running + " aaabbbccdd ddccbbbaaa --count");
  rep = check_report(res, "parse");
  EXPECT_EQ(rep["result"]["accepted"], true);
  EXPECT_EQ(rep["result"]["derivation_count"], 1);
  EXPECT_EQ(rep["result"]["infinite"], false);
  EXPECT_EQ(rep["solver_stats"]["arity_violations"], 0);

  res = run_cli("parse " + running + " abcd abcd");
  rep = check_report(res, "parse");
  EXPECT_EQ(rep["result"]["accepted"], false);
  EXPECT_EQ(res.exit_code, 0);

  res = run_cli("parse " + running + " abcd dcba --objective time");
  EXPECT_EQ(check_report(res, "parse")["result"]["accepted"], true);

  // The empty pair is refused.
  res = run_cli("parse " + running + " '' ''");
  check_report(res, "parse");
  EXPECT_EQ(res.exit_code, 2);

  res = run_cli("parse '" + fixture("nonexistent.sg") + "' a b");
  EXPECT_EQ(res.exit_code, 2);
}

void test_top_level() {
  auto res = run_cli("--help");
  EXPECT_EQ(res.exit_code, 0);
  res = run_cli("frobnicate");
  EXPECT_EQ(res.exit_code, 2);
  res = run_cli("");
  EXPECT_EQ(res.exit_code, 2);

  // Pretty output parses to the same report.
  auto compact = run_cli("analyze 2413");
  auto pretty = run_cli("--pretty analyze 2413");
  EXPECT_EQ(without_wall_time(json::parse(compact.out)),
            without_wall_time(json::parse(pretty.out)));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: cli_tests <path-to-syncparse-binary>\n";
    return 2;
  }
  g_binary = argv[1];

  test_analyze();
  test_optimize();
  test_cutwidth();
  test_cutwidth_threads();
  test_reduce();
  test_parse();
  test_top_level();

  if (g_failures == 0) {
    std::cout << "cli_tests: all checks passed\n";
    return 0;
  }
  std::cout << "cli_tests: " << g_failures << " failures\n";
  return 1;
}
