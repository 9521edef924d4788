#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cantor/rational.hpp"

namespace cantor {

// Append-only ledger of named checks.  Each entry carries an exact enclosure
// [lo, hi] of the certified quantity and a verdict that must follow from it.
struct CertEntry {
  std::string id;
  std::string description;
  std::string paper_value;  // printed decimal being reproduced, or empty
  Rational enclosure_lo, enclosure_hi;
  bool pass = false;
};

class Certificate {
 public:
  // Entries keep insertion order; the verification code emits them in a
  // fixed canonical order so output is byte-for-byte reproducible.
  void add(CertEntry entry);
  void add_check(const std::string& id, const std::string& description, bool pass,
                 const Rational& lo = 0, const Rational& hi = 0,
                 const std::string& paper_value = "");
  void merge(const Certificate& other);

  const std::vector<CertEntry>& entries() const { return entries_; }
  bool all_pass() const;
  std::vector<std::string> failing_ids() const;

  std::string to_json(int digits = 12) const;

 private:
  std::vector<CertEntry> entries_;
};

// Test hook: entries whose id matches a corrupted name get their verdict
// forced to fail (simulating a wrong constant) so failure reporting paths
// can be exercised.  Empty string clears the hook.
void set_fault_injection(const std::string& entry_id);
const std::string& fault_injection();

}  // namespace cantor
