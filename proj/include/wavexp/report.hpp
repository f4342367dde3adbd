#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace wavexp {

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

struct ConditionEntry {
  std::string id;
  Verdict verdict = Verdict::Inconclusive;
  std::vector<double> diagnostics;
  std::string description;
};

/// Ordered list of per-condition verdicts; each condition id appears once.
struct ConditionReport {
  std::vector<ConditionEntry> entries;

  void add(std::string id, Verdict verdict, std::vector<double> diagnostics,
           std::string description) {
    if (find(id) != nullptr)
      throw std::logic_error("duplicate condition id: " + id);
    entries.push_back(
        {std::move(id), verdict, std::move(diagnostics), std::move(description)});
  }

  const ConditionEntry* find(const std::string& id) const {
    for (const auto& e : entries)
      if (e.id == id) return &e;
    return nullptr;
  }

  bool all_pass() const {
    for (const auto& e : entries)
      if (e.verdict != Verdict::Pass) return false;
    return true;
  }
};

}  // namespace wavexp
