#pragma once

#include <cstddef>
#include <vector>

namespace fracfem {

// Graded partition of [0,T]: t_n = T*(n/N)^gamma. gamma = 1 gives a uniform
// grid; gamma > 1 clusters points near t = 0.
class TimeGrid {
public:
    TimeGrid(double T, std::size_t N, double gamma);

    double horizon() const noexcept { return T_; }
    std::size_t steps() const noexcept { return N_; }
    double grading() const noexcept { return gamma_; }

    double point(std::size_t n) const { return points_[n]; }
    const std::vector<double>& points() const noexcept { return points_; }

private:
    double T_;
    std::size_t N_;
    double gamma_;
    std::vector<double> points_;
};

} // namespace fracfem
