#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace hmc {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Tolerance on w_h + w_m = 1 applied when a WeightVector is constructed.
inline constexpr double kSimplexTolerance = 1e-12;

/// Aligned per-instance targets and the two agents' predictions.
///
/// Invariants (checked at construction): all arrays have the same length
/// n >= 1, ids are unique, and every value is finite.
class PredictionSet {
public:
    PredictionSet(std::vector<std::int64_t> instance_ids, Vector y, Vector pred_h, Vector pred_m);

    /// Same as the main constructor with ids 0..n-1.
    static PredictionSet with_sequential_ids(Vector y, Vector pred_h, Vector pred_m);

    std::size_t size() const noexcept { return static_cast<std::size_t>(y_.size()); }

    const std::vector<std::int64_t>& instance_ids() const noexcept { return ids_; }
    const Vector& y() const noexcept { return y_; }
    const Vector& pred_h() const noexcept { return pred_h_; }
    const Vector& pred_m() const noexcept { return pred_m_; }

private:
    std::vector<std::int64_t> ids_;
    Vector y_;
    Vector pred_h_;
    Vector pred_m_;
};

/// Per-instance convex aggregation weights (w_h, w_m).
///
/// Both entries lie in [0, 1] and sum to one within kSimplexTolerance.
/// Violating inputs are rejected, never renormalized.
class WeightVector {
public:
    WeightVector(Vector w_h, Vector w_m);

    /// w_m is derived as 1 - w_h.
    static WeightVector from_human(Vector w_h);
    static WeightVector constant(std::size_t n, double w_h);

    std::size_t size() const noexcept { return static_cast<std::size_t>(w_h_.size()); }
    const Vector& human() const noexcept { return w_h_; }
    const Vector& machine() const noexcept { return w_m_; }

private:
    Vector w_h_;
    Vector w_m_;
};

enum class Direction { minimize, maximize };
enum class ObjectiveKind { mse, rank_weighted, blended };

/// How rank-dependent coefficients v_i are attached to instances: to the
/// i-th smallest loss (`sorted`) or to the i-th instance as given
/// (`fixed_index`).
enum class RankMode { sorted, fixed_index };

/// Which evaluation function scores a policy.
///
/// `a` and `b` are read for rank_weighted and blended; `theta` only for
/// blended (the weight on the plain squared error).
struct EvaluationSpec {
    ObjectiveKind kind = ObjectiveKind::mse;
    double a = 0.5;
    double b = 1.0;
    double theta = 1.0;
    Direction direction = Direction::minimize;
    RankMode rank_mode = RankMode::sorted;
    bool allow_negative = false;

    static EvaluationSpec mse();
    static EvaluationSpec rank_weighted(double a, double b);
    static EvaluationSpec blended(double a, double b, double theta);

    /// Throws InvalidConfigError if a parameter the kind reads is out of range.
    void validate() const;

    bool operator==(const EvaluationSpec&) const = default;
};

struct ComplementarityReport {
    double c_across = 0.0;
    double c_within = 0.0;
    double value_joint = 0.0;
    double value_h = 0.0;
    double value_m = 0.0;
    bool complementary = false;
    std::size_t n = 0;
    // n == 1 makes the across-instance metric trivially zero.
    bool single_instance = false;
};

std::string_view to_string(Direction d);
std::string_view to_string(ObjectiveKind k);
std::string_view to_string(RankMode m);
Direction parse_direction(std::string_view s);
ObjectiveKind parse_objective_kind(std::string_view s);
RankMode parse_rank_mode(std::string_view s);

} // namespace hmc
