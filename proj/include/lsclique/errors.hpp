#pragma once

#include <stdexcept>
#include <string>

namespace lsclique {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input: wrong orders, non-permutations, bad arguments.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class OrderMismatch : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class InvalidOrder : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NotAPermutationMatrix : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class InvalidK : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class WrongCliqueSize : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NotDisjointFromIdentity : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NotSudokuDerangement : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class EmptyCliqueSet : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class ParseError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

// Anything that would exceed a configured memory/storage budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class OrderTooLarge : public BudgetExceeded {
public:
    using BudgetExceeded::BudgetExceeded;
};

class MemoryBudgetExceeded : public BudgetExceeded {
public:
    using BudgetExceeded::BudgetExceeded;
};

class StorageExceeded : public BudgetExceeded {
public:
    using BudgetExceeded::BudgetExceeded;
};

class PopulationTooLarge : public BudgetExceeded {
public:
    using BudgetExceeded::BudgetExceeded;
};

class Interrupted : public Error {
public:
    using Error::Error;
};

class IoFailure : public Error {
public:
    using Error::Error;
};

}  // namespace lsclique
