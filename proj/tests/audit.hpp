// Records every theorem the kernel mints and checks it against the semantic oracle.
// Sequents are deduplicated by their printed form.

#ifndef OOTP_TESTS_AUDIT_HPP_
#define OOTP_TESTS_AUDIT_HPP_

#include <cstddef>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "ootp/kernel.hpp"
#include "oracle.hpp"

namespace audit {

struct Report {
  std::size_t minted = 0;
  std::size_t distinct = 0;
  std::size_t checked = 0;
  std::size_t out_of_scope = 0;
  // Beyond the oracle budget despite having at most two predicate symbols.
  std::vector<std::string> in_scope_unchecked;
  std::vector<std::string> violations;
};

class Auditor {
 public:
  Auditor() {
    ootp::kernel::set_theorem_observer([this](const ootp::Theorem& t) { observe(t); });
  }
  ~Auditor() { ootp::kernel::set_theorem_observer({}); }
  Auditor(const Auditor&) = delete;
  Auditor& operator=(const Auditor&) = delete;

  Report report() const {
    std::lock_guard lock(mu_);
    return report_;
  }

 private:
  void observe(const ootp::Theorem& t) {
    const std::string key = ootp::print_sequent(t.sequent());
    {
      std::lock_guard lock(mu_);
      ++report_.minted;
      if (!seen_.insert(key).second) return;
      ++report_.distinct;
    }
    const oracle::Verdict v = oracle::check(t.sequent());
    std::lock_guard lock(mu_);
    if (v == oracle::Verdict::TooLarge) {
      ++report_.out_of_scope;
      if (oracle::predicate_symbols(t.sequent()) <= 2) report_.in_scope_unchecked.push_back(key);
    } else {
      ++report_.checked;
      if (v == oracle::Verdict::Invalid) report_.violations.push_back(key + "  [" + t.provenance() + "]");
    }
  }

  mutable std::mutex mu_;
  std::set<std::string> seen_;
  Report report_;
};

}  // namespace audit

#endif  // OOTP_TESTS_AUDIT_HPP_
