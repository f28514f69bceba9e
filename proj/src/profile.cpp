#include "fep/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace fep {

Profile Profile::constant(double c)
{
    Profile p;
    p.kind_ = Kind::Constant;
    p.base_ = c;
    return p;
}

Profile Profile::sinusoid(double base, double amplitude)
{
    Profile p;
    p.kind_ = Kind::Sinusoid;
    p.base_ = base;
    p.amp_ = amplitude;
    return p;
}

Profile Profile::piecewise(std::vector<double> breaks, std::vector<double> values)
{
    if (breaks.empty() || breaks.size() != values.size())
        throw std::invalid_argument("piecewise profile needs one value per break");
    if (breaks.front() != 0.0)
        throw std::invalid_argument("first break must be 0");
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (!(breaks[i] > breaks[i - 1]) || breaks[i] >= 1.0)
            throw std::invalid_argument("breaks must increase inside [0,1)");
    Profile p;
    p.kind_ = Kind::Piecewise;
    p.breaks_ = std::move(breaks);
    p.values_ = std::move(values);
    return p;
}

double Profile::operator()(double u) const
{
    u -= std::floor(u);
    switch (kind_) {
    case Kind::Constant: return base_;
    case Kind::Sinusoid: return base_ + amp_ * std::sin(2.0 * std::numbers::pi * u);
    case Kind::Piecewise: {
        auto it = std::upper_bound(breaks_.begin(), breaks_.end(), u);
        return values_[static_cast<std::size_t>(it - breaks_.begin()) - 1];
    }
    }
    return 0.0;
}

double Profile::min() const
{
    switch (kind_) {
    case Kind::Constant: return base_;
    case Kind::Sinusoid: return base_ - std::abs(amp_);
    case Kind::Piecewise: return *std::min_element(values_.begin(), values_.end());
    }
    return 0.0;
}

double Profile::max() const
{
    switch (kind_) {
    case Kind::Constant: return base_;
    case Kind::Sinusoid: return base_ + std::abs(amp_);
    case Kind::Piecewise: return *std::max_element(values_.begin(), values_.end());
    }
    return 0.0;
}

std::string Profile::describe() const
{
    std::ostringstream os;
    switch (kind_) {
    case Kind::Constant: os << "constant " << base_; break;
    case Kind::Sinusoid: os << base_ << " + " << amp_ << " sin(2 pi u)"; break;
    case Kind::Piecewise: os << "piecewise, " << values_.size() << " pieces"; break;
    }
    return os.str();
}

}  // namespace fep
