#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bessu {

/// Base class for failures caused by input data (exit code 1 at the CLI).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FileNotFound : public DataError {
public:
    explicit FileNotFound(const std::string& path)
        : DataError("file not found: " + path), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

class MalformedRow : public DataError {
public:
    MalformedRow(std::size_t line, const std::string& reason)
        : DataError("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}
    std::size_t line() const { return line_; }
    const std::string& reason() const { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

class DuplicateTimestamp : public DataError {
public:
    explicit DuplicateTimestamp(const std::string& ts) : DataError("duplicate timestamp " + ts) {}
};

class NonMonotonicTimestamp : public DataError {
public:
    explicit NonMonotonicTimestamp(const std::string& ts)
        : DataError("timestamp out of order " + ts) {}
};

class CurrencyMismatch : public DataError {
public:
    CurrencyMismatch(const std::string& have, const std::string& want)
        : DataError("currency mismatch: series is in " + have + ", expected " + want) {}
};

class WrongKind : public DataError {
public:
    using DataError::DataError;
};

class IncompleteDay : public DataError {
public:
    using DataError::DataError;
};

class UnpricedEnergyLeg : public DataError {
public:
    using DataError::DataError;
};

class MissingData : public DataError {
public:
    MissingData(const std::string& zone, const std::string& kind)
        : DataError("missing " + kind + " data for zone " + zone), zone_(zone), kind_(kind) {}
    const std::string& zone() const { return zone_; }
    const std::string& kind() const { return kind_; }

private:
    std::string zone_;
    std::string kind_;
};

class ZeroTotalPeriods : public std::invalid_argument {
public:
    ZeroTotalPeriods() : std::invalid_argument("total period count must be positive") {}
};

class NonPositiveCycleLife : public std::invalid_argument {
public:
    NonPositiveCycleLife() : std::invalid_argument("cycle life must be positive") {}
};

class OutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace bessu
