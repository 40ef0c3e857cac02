#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bbssl {

// Bad input: invalid hyperparameters, mismatched dimensions, unknown names.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Numerical failure. stream_index / iteration are -1 when not applicable.
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& msg, std::int64_t stream_index = -1,
                              std::int64_t iteration = -1)
        : std::runtime_error(msg), stream_index_(stream_index), iteration_(iteration) {}

    std::int64_t stream_index() const { return stream_index_; }
    std::int64_t iteration() const { return iteration_; }

private:
    std::int64_t stream_index_;
    std::int64_t iteration_;
};

class UnsupportedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace bbssl
