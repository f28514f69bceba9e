#pragma once

#include <string>
#include <vector>

namespace fep {

/// Macroscopic density profile on the unit torus [0,1).
class Profile {
public:
    enum class Kind { Constant, Sinusoid, Piecewise };

    static Profile constant(double c);
    /// base + amplitude * sin(2 pi u)
    static Profile sinusoid(double base, double amplitude);
    /// values[i] on [breaks[i], breaks[i+1]); breaks start at 0 and increase.
    static Profile piecewise(std::vector<double> breaks, std::vector<double> values);

    double operator()(double u) const;
    double min() const;
    double max() const;
    Kind kind() const { return kind_; }
    std::string describe() const;

    double base() const { return base_; }
    double amplitude() const { return amp_; }
    const std::vector<double>& breaks() const { return breaks_; }
    const std::vector<double>& values() const { return values_; }

private:
    Kind kind_ = Kind::Constant;
    double base_ = 0.0;
    double amp_ = 0.0;
    std::vector<double> breaks_;
    std::vector<double> values_;
};

}  // namespace fep
