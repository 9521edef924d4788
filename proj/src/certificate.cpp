#include "cantor/certificate.hpp"

#include <json.hpp>

namespace cantor {

namespace {
std::string g_fault;
}

void set_fault_injection(const std::string& entry_id) { g_fault = entry_id; }
const std::string& fault_injection() { return g_fault; }

void Certificate::add(CertEntry entry) {
  if (!g_fault.empty() && entry.id == g_fault) entry.pass = false;
  entries_.push_back(std::move(entry));
}

void Certificate::add_check(const std::string& id, const std::string& description, bool pass,
                            const Rational& lo, const Rational& hi,
                            const std::string& paper_value) {
  add({id, description, paper_value, lo, hi, pass});
}

void Certificate::merge(const Certificate& other) {
  for (const auto& e : other.entries_) entries_.push_back(e);
}

bool Certificate::all_pass() const {
  for (const auto& e : entries_)
    if (!e.pass) return false;
  return true;
}

std::vector<std::string> Certificate::failing_ids() const {
  std::vector<std::string> ids;
  for (const auto& e : entries_)
    if (!e.pass) ids.push_back(e.id);
  return ids;
}

std::string Certificate::to_json(int digits) const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : entries_) {
    nlohmann::ordered_json j;
    j["id"] = e.id;
    j["description"] = e.description;
    if (e.paper_value.empty())
      j["paper_value"] = nullptr;
    else
      j["paper_value"] = e.paper_value;
    j["enclosure_lo"] = to_decimal(e.enclosure_lo, digits);
    j["enclosure_hi"] = to_decimal(e.enclosure_hi, digits);
    j["verdict"] = e.pass ? "pass" : "fail";
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace cantor
