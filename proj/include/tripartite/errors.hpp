#pragma once

#include <stdexcept>
#include <string>

namespace tripartite {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Raw device quantity out of its physical range.
class InvalidParameter : public Error
{
public:
    using Error::Error;
};

// SystemConfig invariant violated (detuning sign, negative rates, sigma_z range).
class InvalidConfiguration : public Error
{
public:
    using Error::Error;
};

// Configuration document failed to parse or violated the schema.
class ConfigError : public Error
{
public:
    using Error::Error;
};

// Operation called outside the domain its closed form is defined on.
class DomainError : public Error
{
public:
    using Error::Error;
};

class RegimeError : public Error
{
public:
    RegimeError(const std::string &what, double eta_c, double eta_m)
        : Error(what), eta_c_(eta_c), eta_m_(eta_m)
    {
    }
    double eta_c() const { return eta_c_; }
    double eta_m() const { return eta_m_; }

private:
    double eta_c_;
    double eta_m_;
};

class SingularityError : public Error
{
public:
    SingularityError(const std::string &what, double frequency)
        : Error(what), frequency_(frequency)
    {
    }
    /// Angular frequency (rad/ns) at which the singularity was hit.
    double frequency() const { return frequency_; }

private:
    double frequency_;
};

class NoCouplingError : public Error
{
public:
    using Error::Error;
};

class UndefinedPhaseError : public Error
{
public:
    using Error::Error;
};

class DipProximityError : public Error
{
public:
    DipProximityError(const std::string &what, double frequency)
        : Error(what), frequency_(frequency)
    {
    }
    double frequency() const { return frequency_; }

private:
    double frequency_;
};

} // namespace tripartite
