#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "properties.hpp"

TEST_CASE("metric ranges, symmetry and identities") { CHECK(props::metric_ranges(1, 2000) == ""); }

TEST_CASE("rank weights average to one and stay above b") { CHECK(props::v_weight_bounds(2, 2000) == ""); }

TEST_CASE("objective monotonicity and affinity in theta") { CHECK(props::objective_structure(3, 2000) == ""); }

TEST_CASE("least-squares residuals are orthogonal to the design") { CHECK(props::ols_orthogonality(4, 200) == ""); }

TEST_CASE("oracle combiner dominates both agents") { CHECK(props::combiner_dominance(5, 500) == ""); }

TEST_CASE("experiments are independent of thread count") { CHECK(props::experiment_thread_invariance(6, 3) == ""); }
