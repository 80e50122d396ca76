#pragma once

// Association solutions (Psi, C), the decoding of continuous optimizer
// positions into feasible solutions, the utility objective, and the
// constraint checker.
//
// Encoding: one real per UE in [0, N_b]; floor() selects the candidate BS
// (N_b itself maps to N_b - 1). UEs are admitted in ascending index order:
// a UE is served iff its rate to the candidate meets its demand and the
// candidate still has c = R_min / r of its resource budget left.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "thzcell/channel.hpp"
#include "thzcell/scenario.hpp"

namespace thzcell {

// Dense row-major matrix, rows = base stations, cols = users.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using PositionVector = std::vector<double>;

// Achievable rate of every BS-UE pair plus the UE demands. Built once per
// (topology, channel) and shared read-only by all evaluations.
class RateTable {
public:
    RateTable(const Topology& topology, const LinkBudgetParams& params);
    // Explicit rates (rows = BS) and per-UE demands.
    RateTable(Matrix<double> rates, std::vector<double> demands);

    std::size_t num_bs() const { return rates_.rows(); }
    std::size_t num_ue() const { return rates_.cols(); }
    double rate(std::size_t bs, std::size_t ue) const { return rates_(bs, ue); }
    double demand(std::size_t ue) const { return demands_[ue]; }
    const Matrix<double>& rates() const { return rates_; }

private:
    Matrix<double> rates_;
    std::vector<double> demands_;
};

struct AssociationSolution {
    Matrix<std::uint8_t> psi;   // psi(i, j) in {0, 1}
    Matrix<double> fractions;   // c(i, j) in [0, 1]
    Matrix<double> rates;       // r(i, j), bit/s
    double utility = 0.0;       // sum of r(i, j) * c(i, j), bit/s

    std::size_t num_bs() const { return psi.rows(); }
    std::size_t num_ue() const { return psi.cols(); }

    std::optional<std::size_t> serving_bs(std::size_t ue) const;
    std::size_t served_count() const;
    double served_fraction() const;

    friend bool operator==(const AssociationSolution&, const AssociationSolution&) = default;
};

// Candidate BS index for one position coordinate.
std::size_t candidate_bs(double value, std::size_t num_bs);

AssociationSolution decode(std::span<const double> position, const RateTable& table);
AssociationSolution decode(std::span<const double> position, const Topology& topology,
                           const LinkBudgetParams& params);

// Utility of the decoded solution without materializing it. Bit-identical to
// decode(position, table).utility.
double decode_utility(std::span<const double> position, const RateTable& table);

double evaluate_objective(const AssociationSolution& solution);

struct ConstraintViolation {
    std::string constraint;  // "C1", "C2", "C3", "C4", "C5", "C6", "shape"
    std::optional<std::size_t> bs;
    std::optional<std::size_t> ue;
    std::string detail;
};

// Every violated constraint with its indices; empty for feasible solutions.
// C2 is checked in its relaxed form (each UE on at most one BS).
std::vector<ConstraintViolation> check_constraints(const AssociationSolution& solution,
                                                   const Topology& topology);

inline constexpr std::uint64_t kExhaustiveLimit = 10'000'000;

// Best decoded solution over all N_b^N_u candidate assignments. Throws
// SizeError when the candidate count exceeds `limit`.
AssociationSolution exhaustive_search(const Topology& topology, const LinkBudgetParams& params,
                                      std::uint64_t limit = kExhaustiveLimit);

// Per-UE records {ue_id, bs_id or null, fraction, rate_bps}.
nlohmann::json solution_to_json(const AssociationSolution& solution, const Topology& topology);

}  // namespace thzcell
