#include "structural.hpp"

#include <gtest/gtest.h>

using namespace skewfield;
using namespace testsupport;

namespace {

void expect_clean(const PropertyTally& t) {
    for (const auto& f : t.failures) {
        ADD_FAILURE() << t.name << ": " << f;
    }
    EXPECT_LT(t.skipped, t.cases) << t.name;
}

} // namespace

TEST(Properties, PencilAgreesWithExpression) { expect_clean(pencil_agreement(101, 120)); }

TEST(Properties, PresentationsAreConsistent) { expect_clean(presentations(202, 60)); }

TEST(Properties, ReynoldsIdempotent) { expect_clean(reynolds_idempotent(303, 60)); }

TEST(Properties, ReductionStable) { expect_clean(reduction_stability(404, 60)); }
