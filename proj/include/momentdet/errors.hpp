#ifndef MOMENTDET_ERRORS_HPP
#define MOMENTDET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace momentdet {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvariantError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct QuadratureFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OverflowToInfinity : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegreeOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct AxisOutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IllConditioned : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IndexOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RealPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonPositiveEvenMoment : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ZeroDenominator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace momentdet

#endif
