#pragma once

// Report assembly: a canonical-order JSON document for machines and a
// plain-text rendering of the same data for humans.  Reports carry no
// clocks or environment state, so a given config + seed always produces
// byte-identical output.

#include <flagvortex/numeric.hpp>

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace flagvortex {

using Json = nlohmann::ordered_json;

enum class Severity { info, warning, inconsistency, error };

inline const char* severity_str(Severity s) {
  switch (s) {
    case Severity::info: return "info";
    case Severity::warning: return "warning";
    case Severity::inconsistency: return "inconsistency";
    case Severity::error: return "error";
  }
  return "error";
}

struct Finding {
  Severity severity = Severity::info;
  std::string stage;
  std::string message;
};

namespace repdetail {

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace repdetail

// Every numeric entry states how exact it is: rational data is tagged
// "exact", floating measurements carry the tolerance they were held to.
inline Json exact_entry(const Rational& q) {
  return Json{{"value", rational_str(q)}, {"tol", "exact"}};
}

inline Json exact_entry(const Integer& n) {
  return Json{{"value", n.str()}, {"tol", "exact"}};
}

inline Json measured_entry(double value, double tol) {
  return Json{{"value", value}, {"tol", tol}};
}

struct Report {
  Json machine = Json::object();
  std::vector<Finding> findings;

  void add_finding(Severity sev, const std::string& stage, const std::string& message) {
    findings.push_back({sev, stage, message});
  }

  bool has_failures() const {
    for (const auto& f : findings)
      if (f.severity >= Severity::inconsistency) return true;
    return false;
  }

  int exit_status() const { return has_failures() ? 1 : 0; }

  std::string machine_text() const {
    Json doc = machine;
    Json fs = Json::array();
    for (const auto& f : findings)
      fs.push_back(Json{{"severity", severity_str(f.severity)},
                        {"stage", f.stage},
                        {"message", f.message}});
    doc["findings"] = fs;
    doc["status"] = has_failures() ? "fail" : "ok";
    return doc.dump(2) + "\n";
  }

  std::string human_text() const {
    std::string out;
    for (const auto& [name, body] : machine.items()) {
      out += name + "\n";
      render(body, 1, out);
    }
    out += "findings\n";
    if (findings.empty()) out += "  none\n";
    for (const auto& f : findings)
      out += "  [" + std::string(severity_str(f.severity)) + "] " + f.stage + ": " + f.message +
             "\n";
    out += std::string("status: ") + (has_failures() ? "FAIL" : "OK") + "\n";
    return out;
  }

 private:
  static void render(const Json& node, int depth, std::string& out) {
    const std::string pad(2 * static_cast<size_t>(depth), ' ');
    if (node.is_object()) {
      // {value, tol} pairs print on one line.
      if (node.size() == 2 && node.contains("value") && node.contains("tol")) {
        out += pad + scalar(node["value"]) + "  (tol " + scalar(node["tol"]) + ")\n";
        return;
      }
      for (const auto& [key, value] : node.items()) {
        if (value.is_object() && value.size() == 2 && value.contains("value") &&
            value.contains("tol")) {
          out += pad + key + ": " + scalar(value["value"]) + "  (tol " + scalar(value["tol"]) +
                 ")\n";
        } else if (value.is_object() || value.is_array()) {
          out += pad + key + ":\n";
          render(value, depth + 1, out);
        } else {
          out += pad + key + ": " + scalar(value) + "\n";
        }
      }
    } else if (node.is_array()) {
      for (const auto& item : node) {
        if (item.is_object() || item.is_array()) {
          out += pad + "-\n";
          render(item, depth + 1, out);
        } else {
          out += pad + "- " + scalar(item) + "\n";
        }
      }
    } else {
      out += pad + scalar(node) + "\n";
    }
  }

  static std::string scalar(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
  }
};

}  // namespace flagvortex
