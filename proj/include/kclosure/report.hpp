#pragma once

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

namespace kclosure {

inline constexpr const char *kArtifactVersion = "0.1.0";

using json = nlohmann::ordered_json;

struct Check {
  std::string description;
  json expected;
  json observed;
  bool pass = false;
};

/// Outcome of one verification campaign. Passes iff every check passes.
struct VerificationReport {
  std::string campaign;
  json inputs = json::object();
  std::vector<Check> checks;
  json details = json::object();
  double wall_time = 0.0;
  std::string artifact_version = kArtifactVersion;

  bool passed() const {
    for (const auto &c : checks)
      if (!c.pass) return false;
    return true;
  }

  /// Records a check that passes iff observed == expected.
  template <class E, class O>
  bool expect_eq(std::string description, const E &expected, const O &observed) {
    json e = expected, o = observed;
    bool ok = e == o;
    checks.push_back({std::move(description), std::move(e), std::move(o), ok});
    return ok;
  }

  bool expect_true(std::string description, bool observed) {
    return expect_eq(std::move(description), true, observed);
  }

  void merge(const VerificationReport &other, const std::string &prefix) {
    for (const auto &c : other.checks)
      checks.push_back({prefix + c.description, c.expected, c.observed, c.pass});
  }

  json to_json(bool with_time = true) const {
    json j;
    j["campaign"] = campaign;
    j["artifact_version"] = artifact_version;
    j["inputs"] = inputs;
    j["pass"] = passed();
    json cs = json::array();
    for (const auto &c : checks)
      cs.push_back({{"description", c.description},
                    {"expected", c.expected},
                    {"observed", c.observed},
                    {"pass", c.pass}});
    j["checks"] = std::move(cs);
    j["details"] = details;
    if (with_time) j["wall_time"] = wall_time;
    return j;
  }

  std::string to_text() const {
    std::string out = campaign + " (" + artifact_version + ")\n";
    for (const auto &c : checks) {
      out += c.pass ? "  PASS  " : "  FAIL  ";
      out += c.description;
      if (!c.pass)
        out += "  [expected " + c.expected.dump() + ", observed " + c.observed.dump() + "]";
      out += '\n';
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", wall_time);
    out += std::string(passed() ? "OK" : "FAILED") + "  " +
           std::to_string(checks.size()) + " checks, " + buf + " s\n";
    return out;
  }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace kclosure
