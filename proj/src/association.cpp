#include "thzcell/association.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "thzcell/errors.hpp"

namespace thzcell {

namespace {

// Tolerance for the C1 budget sum, which accumulates rounding over many UEs.
constexpr double kBudgetTolerance = 1e-9;

// Runs the admission rule and reports every admitted (bs, ue, fraction).
// Returns the utility accumulated in UE order.
template <class OnAdmit>
double admit(std::span<const double> position, const RateTable& table, OnAdmit&& on_admit) {
    if (position.size() != table.num_ue()) {
        throw ParameterError("position", "length " + std::to_string(position.size()) +
                                             " does not match " + std::to_string(table.num_ue()) +
                                             " users");
    }
    const std::size_t num_bs = table.num_bs();
    // Small stack budget for typical BS counts; heap only for large ones.
    constexpr std::size_t kInline = 32;
    double inline_budget[kInline];
    std::vector<double> heap_budget;
    double* budget = inline_budget;
    if (num_bs > kInline) {
        heap_budget.resize(num_bs);
        budget = heap_budget.data();
    }
    std::fill(budget, budget + num_bs, 1.0);

    double utility = 0.0;
    for (std::size_t ue = 0; ue < position.size(); ++ue) {
        const std::size_t bs = candidate_bs(position[ue], num_bs);
        const double rate = table.rate(bs, ue);
        const double demand = table.demand(ue);
        if (!(rate >= demand)) continue;
        const double fraction = demand / rate;
        if (fraction > budget[bs]) continue;
        budget[bs] -= fraction;
        utility += rate * fraction;
        on_admit(bs, ue, fraction);
    }
    return utility;
}

}  // namespace

RateTable::RateTable(const Topology& topology, const LinkBudgetParams& params)
    : rates_(topology.num_bs(), topology.num_ue()) {
    topology.validate();
    params.validate();
    demands_.reserve(topology.num_ue());
    for (const auto& ue : topology.users) demands_.push_back(ue.min_rate_bps);
    for (std::size_t i = 0; i < topology.num_bs(); ++i) {
        for (std::size_t j = 0; j < topology.num_ue(); ++j) {
            rates_(i, j) = achievable_rate(
                params, distance(topology.base_stations[i].position, topology.users[j].position));
        }
    }
}

RateTable::RateTable(Matrix<double> rates, std::vector<double> demands)
    : rates_(std::move(rates)), demands_(std::move(demands)) {
    require(rates_.rows() >= 1 && rates_.cols() >= 1, "rates", "need at least one BS and one UE");
    require(demands_.size() == rates_.cols(), "demands", "one demand per UE required");
    for (std::size_t i = 0; i < rates_.rows(); ++i) {
        for (std::size_t j = 0; j < rates_.cols(); ++j) {
            require(rates_(i, j) >= 0.0, "rates", "rates must be non-negative");
        }
    }
    for (double d : demands_) require(d > 0.0, "demands", "demands must be positive");
}

std::optional<std::size_t> AssociationSolution::serving_bs(std::size_t ue) const {
    for (std::size_t i = 0; i < num_bs(); ++i) {
        if (psi(i, ue) != 0) return i;
    }
    return std::nullopt;
}

std::size_t AssociationSolution::served_count() const {
    std::size_t served = 0;
    for (std::size_t j = 0; j < num_ue(); ++j) {
        std::size_t column = 0;
        for (std::size_t i = 0; i < num_bs(); ++i) column += psi(i, j);
        if (column == 1) ++served;
    }
    return served;
}

double AssociationSolution::served_fraction() const {
    if (num_ue() == 0) return 0.0;
    return static_cast<double>(served_count()) / static_cast<double>(num_ue());
}

std::size_t candidate_bs(double value, std::size_t num_bs) {
    if (!(value > 0.0)) return 0;  // also maps NaN to BS 0
    const double top = static_cast<double>(num_bs - 1);
    const double index = std::floor(value);
    return index >= top ? num_bs - 1 : static_cast<std::size_t>(index);
}

AssociationSolution decode(std::span<const double> position, const RateTable& table) {
    AssociationSolution solution{Matrix<std::uint8_t>(table.num_bs(), table.num_ue()),
                                 Matrix<double>(table.num_bs(), table.num_ue()), table.rates(),
                                 0.0};
    solution.utility = admit(position, table, [&](std::size_t bs, std::size_t ue, double c) {
        solution.psi(bs, ue) = 1;
        solution.fractions(bs, ue) = c;
    });
    return solution;
}

AssociationSolution decode(std::span<const double> position, const Topology& topology,
                           const LinkBudgetParams& params) {
    return decode(position, RateTable(topology, params));
}

double decode_utility(std::span<const double> position, const RateTable& table) {
    return admit(position, table, [](std::size_t, std::size_t, double) {});
}

double evaluate_objective(const AssociationSolution& solution) {
    // UE-major order matches the accumulation order of the decoder.
    double total = 0.0;
    for (std::size_t j = 0; j < solution.num_ue(); ++j) {
        for (std::size_t i = 0; i < solution.num_bs(); ++i) {
            const double c = solution.fractions(i, j);
            if (c != 0.0) total += solution.rates(i, j) * c;
        }
    }
    return total;
}

std::vector<ConstraintViolation> check_constraints(const AssociationSolution& solution,
                                                   const Topology& topology) {
    std::vector<ConstraintViolation> report;
    const std::size_t nb = topology.num_bs();
    const std::size_t nu = topology.num_ue();
    auto shape_ok = [&](auto const& m) { return m.rows() == nb && m.cols() == nu; };
    if (!shape_ok(solution.psi) || !shape_ok(solution.fractions) || !shape_ok(solution.rates)) {
        report.push_back({"shape", std::nullopt, std::nullopt,
                          "matrices do not match a " + std::to_string(nb) + "x" +
                              std::to_string(nu) + " topology"});
        return report;
    }

    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };

    for (std::size_t i = 0; i < nb; ++i) {
        double load = 0.0;
        for (std::size_t j = 0; j < nu; ++j) load += solution.fractions(i, j);
        if (load > 1.0 + kBudgetTolerance) {
            report.push_back({"C1", i, std::nullopt, "resource sum " + fmt(load) + " > 1"});
        }
    }
    for (std::size_t j = 0; j < nu; ++j) {
        unsigned column = 0;
        for (std::size_t i = 0; i < nb; ++i) column += solution.psi(i, j);
        if (column > 1) {
            report.push_back({"C2", std::nullopt, j,
                              "user associated to " + std::to_string(column) + " base stations"});
        }
    }
    for (std::size_t i = 0; i < nb; ++i) {
        for (std::size_t j = 0; j < nu; ++j) {
            const auto psi = solution.psi(i, j);
            const double c = solution.fractions(i, j);
            if (psi > 1) {
                report.push_back({"C3", i, j, "psi not binary"});
            }
            if (!(c >= 0.0 && c <= static_cast<double>(psi))) {
                report.push_back({"C3", i, j,
                                  "fraction " + fmt(c) + " outside [0, psi=" +
                                      std::to_string(psi) + "]"});
            }
            if (psi == 1 && solution.rates(i, j) < topology.users[j].min_rate_bps) {
                report.push_back({"C4", i, j,
                                  "rate " + fmt(solution.rates(i, j)) + " below demand " +
                                      fmt(topology.users[j].min_rate_bps)});
            }
        }
    }
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    for (std::size_t i = 0; i < nb; ++i) {
        const double phi = topology.base_stations[i].boresight;
        if (!(phi >= 0.0 && phi <= kTwoPi)) {
            report.push_back({"C5", i, std::nullopt, "boresight " + fmt(phi) + " outside [0, 2pi]"});
        }
    }
    for (std::size_t j = 0; j < nu; ++j) {
        const double phi = topology.users[j].boresight;
        if (!(phi >= 0.0 && phi <= kTwoPi)) {
            report.push_back({"C6", std::nullopt, j, "boresight " + fmt(phi) + " outside [0, 2pi]"});
        }
    }
    return report;
}

AssociationSolution exhaustive_search(const Topology& topology, const LinkBudgetParams& params,
                                      std::uint64_t limit) {
    const RateTable table(topology, params);
    const std::size_t nb = table.num_bs();
    const std::size_t nu = table.num_ue();

    std::uint64_t count = 1;
    for (std::size_t j = 0; j < nu; ++j) {
        if (count > limit / nb) {
            throw SizeError("exhaustive search over " + std::to_string(nb) + "^" +
                            std::to_string(nu) + " assignments exceeds limit " +
                            std::to_string(limit));
        }
        count *= nb;
    }
    if (count > limit) {
        throw SizeError("exhaustive search exceeds limit " + std::to_string(limit));
    }

    // Odometer over BS indices; each digit is encoded at the centre of its cell.
    std::vector<std::size_t> digits(nu, 0);
    PositionVector position(nu, 0.5);
    PositionVector best_position = position;
    double best = decode_utility(position, table);
    for (std::uint64_t n = 1; n < count; ++n) {
        for (std::size_t j = 0; j < nu; ++j) {
            if (++digits[j] < nb) {
                position[j] = static_cast<double>(digits[j]) + 0.5;
                break;
            }
            digits[j] = 0;
            position[j] = 0.5;
        }
        const double u = decode_utility(position, table);
        if (u > best) {
            best = u;
            best_position = position;
        }
    }
    return decode(best_position, table);
}

nlohmann::json solution_to_json(const AssociationSolution& solution, const Topology& topology) {
    auto users = nlohmann::json::array();
    for (std::size_t j = 0; j < solution.num_ue(); ++j) {
        nlohmann::json entry;
        entry["ue_id"] = topology.users[j].id;
        if (const auto bs = solution.serving_bs(j)) {
            entry["bs_id"] = topology.base_stations[*bs].id;
            entry["fraction"] = solution.fractions(*bs, j);
            entry["rate_bps"] = solution.rates(*bs, j);
        } else {
            entry["bs_id"] = nullptr;
            entry["fraction"] = 0.0;
            entry["rate_bps"] = 0.0;
        }
        users.push_back(std::move(entry));
    }
    return {{"utility_bps", solution.utility},
            {"served_fraction", solution.served_fraction()},
            {"users", std::move(users)}};
}

}  // namespace thzcell
