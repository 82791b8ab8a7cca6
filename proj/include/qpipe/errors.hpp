#pragma once

#include <stdexcept>
#include <string>

namespace qpipe {

// Base type for every error the engine raises on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Requested register/circuit exceeds the qubit budget.
struct CapacityError : Error {
    using Error::Error;
};

// Qubit index out of range or duplicated.
struct IndexError : Error {
    using Error::Error;
};

// Input vector is not unit-norm where a unit vector is required.
struct NormalizationError : Error {
    using Error::Error;
};

// Register initialization attempted on qubits that are no longer |0...0>.
struct InitializationOrderError : Error {
    using Error::Error;
};

// Scalar argument outside its documented domain (shots < 1, k > N, ...).
struct ParameterError : Error {
    using Error::Error;
};

// Mismatched vector/matrix dimensions.
struct DimensionError : Error {
    using Error::Error;
};

// Conditional probability requested on an impossible branch.
struct DegenerateDistributionError : Error {
    using Error::Error;
};

// Dataset file unreadable or violating the CSV contract.
struct IngestionError : Error {
    using Error::Error;
};

// A class has fewer members than the requested fold count.
struct StratificationError : Error {
    using Error::Error;
};

// Two result sets cannot be paired key-by-key.
struct PairingError : Error {
    using Error::Error;
};

// Experiment configuration invalid.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qpipe
