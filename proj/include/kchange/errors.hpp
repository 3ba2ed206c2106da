#pragma once

#include <stdexcept>
#include <string>

namespace kchange {

class Error : public std::runtime_error {
public:
        using std::runtime_error::runtime_error;
};

// Problem spec is structurally unusable (empty input or query universe, bad tables).
class MalformedProblem : public Error {
public:
        using Error::Error;
};

// A move violating the game rules: bad change target, exhausted budget.
class IllegalMove : public Error {
public:
        using Error::Error;
};

// The query was already answered; its outcome is fixed.
class RefusedQuery : public IllegalMove {
public:
        using IllegalMove::IllegalMove;
};

// An agent produced an illegal move during a refereed match.
class Forfeit : public Error {
public:
        Forfeit(std::string agent, const std::string &why)
                : Error(agent + " forfeits: " + why), agent_(std::move(agent))
        {
        }

        const std::string &agent() const { return agent_; }

private:
        std::string agent_;
};

// Query, node, time or memo limit was hit.
class LimitExceeded : public Error {
public:
        using Error::Error;
};

// Requested size is beyond what the builders or guards allow.
class CapacityError : public Error {
public:
        using Error::Error;
};

// Bad configuration: unknown agent name, family/problem mismatch, bad range.
class ConfigError : public Error {
public:
        using Error::Error;
};

// A prediction needs a value the caller did not supply.
class DependencyError : public Error {
public:
        using Error::Error;
};

} // namespace kchange
