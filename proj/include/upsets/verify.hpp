#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "upsets/family.hpp"
#include "upsets/measure.hpp"

namespace upsets {

// One verified claim. lhs/rhs are the compared quantities and margin the
// slack, formatted as "num/den" when exact and as shortest round-trip
// decimals when floating point. A non-empty flag marks a comparison made
// under a documented convention that is not a provable inequality (the
// k = 1 limit constant in the width/ratio upper bounds); flagged records
// are reported in full but do not gate the overall outcome.
struct CheckRecord {
    std::string check;      // stable id, e.g. "russo_identity"
    std::string instance;   // which family
    std::string params;     // e.g. "p=1/2"
    std::string statement;  // what is claimed
    std::string lhs, rhs, margin;
    bool pass = false;
    std::string flag;
};

struct VerificationLedger {
    std::vector<CheckRecord> records;

    void add(CheckRecord rec) { records.push_back(std::move(rec)); }
    std::size_t gating_failures() const;  // failed records with empty flag
    std::size_t flagged_failures() const;
    bool all_pass() const { return gating_failures() == 0; }
    bool has_check(const std::string& id) const;
    // Required ids (see required_check_ids) that never appeared.
    std::vector<std::string> missing_required() const;
    std::string to_json() const;  // stable schema, "verification-ledger/1"
};

// Check ids a full builtin-suite run must produce at least once.
const std::vector<std::string>& required_check_ids();

struct SuiteOptions {
    int threads = 4;  // second thread count for the sampling determinism check
    std::uint64_t mc_samples = 1'000'000;
    std::uint64_t mc_seed = 20260815;
    int limit = default_enumeration_limit;
};

struct SuiteInstance {
    std::string name;
    MintermFamily family;
};

// The fixed roster: >= 50 instances with n <= 12 drawn from every
// generator, plus three larger families (20 singletons, triangle and
// K4 copies in K_6) exercising the n = 15..20 range.
std::vector<SuiteInstance> builtin_suite_instances();

// Every theorem check for one family, on the fixed parameter grids
// (see README). Appends records; never throws on check failure, only on
// unusable input (e.g. ground set beyond the enumeration limit).
void run_family_checks(VerificationLedger& led, const std::string& name,
                       const MintermFamily& fam, const SuiteOptions& opts);

// Full builtin suite: per-family checks over the roster, hand-pinned
// values on the worked examples, and the graph-copy checks.
VerificationLedger run_builtin_suite(const SuiteOptions& opts = {});

}  // namespace upsets
