#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fa {

/// Raised when an iterate leaves the finite range a run is allowed to explore.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}

    /// Time (continuous runs) or step index (discrete runs) of the blow-up.
    double time() const noexcept { return time_; }

private:
    double time_;
};

inline constexpr double kDivergenceThreshold = 1e12;

struct TrajectoryMeta {
    std::string scheme;
    double step = 0.0;
    std::map<std::string, double> params;
    std::optional<std::uint64_t> seed;
};

/// Time-indexed table of state vectors. Column names describe the state
/// layout; times must be strictly increasing.
class Trajectory {
public:
    Trajectory() = default;
    Trajectory(std::vector<std::string> columns, TrajectoryMeta meta);

    void reserve(std::size_t samples);
    void push(double t, std::span<const double> state);
    void push(double t, std::initializer_list<double> state) {
        push(t, std::span<const double>(state.begin(), state.size()));
    }

    std::size_t size() const noexcept { return times_.size(); }
    bool empty() const noexcept { return times_.empty(); }
    std::size_t width() const noexcept { return columns_.size(); }

    const std::vector<double>& times() const noexcept { return times_; }
    double time(std::size_t k) const { return times_.at(k); }
    std::span<const double> state(std::size_t k) const;
    double at(std::size_t k, std::size_t column) const;

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    std::size_t column_index(const std::string& name) const;
    std::vector<double> column(std::size_t c) const;
    std::vector<double> column(const std::string& name) const { return column(column_index(name)); }

    const TrajectoryMeta& meta() const noexcept { return meta_; }
    TrajectoryMeta& meta() noexcept { return meta_; }

    /// Appends a derived column (one value per sample).
    void add_column(const std::string& name, std::span<const double> values);

    /// CSV with a header row; the first column is named `time_label`.
    std::string to_csv(const std::string& time_label = "t") const;

private:
    std::vector<std::string> columns_;
    std::vector<double> times_;
    std::vector<double> data_;
    TrajectoryMeta meta_;
};

}  // namespace fa
