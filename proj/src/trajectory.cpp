#include "fa/trajectory.hpp"

#include <algorithm>
#include <cstdio>

namespace fa {

namespace {

// Shortest representation that round-trips through strtod.
void append_number(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out += buf;
}

}  // namespace

Trajectory::Trajectory(std::vector<std::string> columns, TrajectoryMeta meta)
    : columns_(std::move(columns)), meta_(std::move(meta)) {
    if (columns_.empty()) throw std::invalid_argument("trajectory needs at least one column");
}

void Trajectory::reserve(std::size_t samples) {
    times_.reserve(samples);
    data_.reserve(samples * columns_.size());
}

void Trajectory::push(double t, std::span<const double> state) {
    if (state.size() != columns_.size())
        throw std::invalid_argument("state width does not match trajectory columns");
    if (!times_.empty() && !(t > times_.back()))
        throw std::invalid_argument("trajectory times must be strictly increasing");
    times_.push_back(t);
    data_.insert(data_.end(), state.begin(), state.end());
}

std::span<const double> Trajectory::state(std::size_t k) const {
    if (k >= times_.size()) throw std::out_of_range("trajectory sample index");
    return {data_.data() + k * columns_.size(), columns_.size()};
}

double Trajectory::at(std::size_t k, std::size_t column) const {
    if (column >= columns_.size()) throw std::out_of_range("trajectory column index");
    return state(k)[column];
}

std::size_t Trajectory::column_index(const std::string& name) const {
    auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) throw std::out_of_range("no trajectory column named " + name);
    return static_cast<std::size_t>(it - columns_.begin());
}

std::vector<double> Trajectory::column(std::size_t c) const {
    if (c >= columns_.size()) throw std::out_of_range("trajectory column index");
    std::vector<double> out(times_.size());
    for (std::size_t k = 0; k < times_.size(); ++k) out[k] = data_[k * columns_.size() + c];
    return out;
}

void Trajectory::add_column(const std::string& name, std::span<const double> values) {
    if (values.size() != times_.size())
        throw std::invalid_argument("derived column length does not match trajectory");
    const std::size_t w = columns_.size();
    std::vector<double> widened;
    widened.reserve(times_.size() * (w + 1));
    for (std::size_t k = 0; k < times_.size(); ++k) {
        widened.insert(widened.end(), data_.begin() + k * w, data_.begin() + (k + 1) * w);
        widened.push_back(values[k]);
    }
    data_ = std::move(widened);
    columns_.push_back(name);
}

std::string Trajectory::to_csv(const std::string& time_label) const {
    std::string out = time_label;
    for (const auto& c : columns_) {
        out += ',';
        out += c;
    }
    out += '\n';
    const std::size_t w = columns_.size();
    for (std::size_t k = 0; k < times_.size(); ++k) {
        append_number(out, times_[k]);
        for (std::size_t c = 0; c < w; ++c) {
            out += ',';
            append_number(out, data_[k * w + c]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace fa
