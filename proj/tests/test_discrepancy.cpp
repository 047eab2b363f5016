// SPDX-License-Identifier: MIT
#include "stackel/discrepancy.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <string>

namespace {

std::map<std::string, stackel::Discrepancy> ledger_by_id() {
    std::map<std::string, stackel::Discrepancy> out;
    for (auto& d : stackel::discrepancy_ledger()) out.emplace(d.id, d);
    return out;
}

TEST(Ledger, ContainsTheRequiredFindings) {
    const auto ledger = ledger_by_id();
    for (const char* id : {"eta11-exponent", "rotation-invariant", "jordan-orientation",
                           "family3-header"}) {
        ASSERT_TRUE(ledger.contains(id)) << id;
        const auto& d = ledger.at(id);
        EXPECT_FALSE(d.location.empty());
        EXPECT_FALSE(d.printed.empty());
        EXPECT_FALSE(d.resolution.empty());
        EXPECT_FALSE(d.evidence.empty());
        EXPECT_FALSE(d.confirmed) << id;
        EXPECT_GT(d.printed_residual, 0.1) << id;
        EXPECT_LT(d.resolved_residual, 1e-12) << id;
    }
}

TEST(Ledger, OracleResidualsSeparatePrintedFromResolved) {
    for (const auto& d : stackel::discrepancy_ledger()) {
        EXPECT_GE(d.printed_residual, 0.0) << d.id;
        EXPECT_GE(d.resolved_residual, 0.0) << d.id;
        if (!d.confirmed && d.printed_residual > 0.0) {
            EXPECT_GT(d.printed_residual, 1e3 * std::max(d.resolved_residual, 1e-15)) << d.id;
        }
    }
}

TEST(Ledger, OneDisplayEntryPerFamily) {
    const auto ledger = ledger_by_id();
    for (int id = 1; id <= 10; ++id) {
        EXPECT_TRUE(ledger.contains("display-family-" + std::to_string(id))) << id;
    }
    EXPECT_FALSE(ledger.at("display-family-8").confirmed);
    EXPECT_FALSE(ledger.at("display-family-9").confirmed);
    EXPECT_TRUE(ledger.at("display-family-1").confirmed);
}

TEST(Ledger, IsDeterministic) {
    const auto a = stackel::discrepancy_ledger();
    const auto b = stackel::discrepancy_ledger();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].id, b[i].id);
        EXPECT_EQ(a[i].evidence, b[i].evidence);
        EXPECT_EQ(a[i].printed_residual, b[i].printed_residual);
    }
}

}  // namespace
