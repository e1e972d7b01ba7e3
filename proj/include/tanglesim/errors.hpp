#pragma once

#include <stdexcept>

namespace tanglesim {

/// Base class of every error thrown by this library.
struct tangle_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// trinary
struct invalid_tryte_error : tangle_error { using tangle_error::tangle_error; };
struct odd_length_error : tangle_error { using tangle_error::tangle_error; };
struct value_out_of_range_error : tangle_error { using tangle_error::tangle_error; };

// tangle
struct unknown_parent_error : tangle_error { using tangle_error::tangle_error; };
struct unknown_transaction_error : tangle_error { using tangle_error::tangle_error; };
struct duplicate_hash_error : tangle_error { using tangle_error::tangle_error; };
struct invalid_pow_error : tangle_error { using tangle_error::tangle_error; };

// tip selection / coordinator
struct empty_graph_error : tangle_error { using tangle_error::tangle_error; };
struct interval_not_elapsed_error : tangle_error { using tangle_error::tangle_error; };
struct no_consistent_tip_error : tangle_error { using tangle_error::tangle_error; };

// mam
struct not_found_error : tangle_error { using tangle_error::tangle_error; };
struct auth_failure_error : tangle_error { using tangle_error::tangle_error; };

// simulation / bench / cli
struct unknown_stage_error : tangle_error { using tangle_error::tangle_error; };
struct empty_input_error : tangle_error { using tangle_error::tangle_error; };
struct config_error : tangle_error { using tangle_error::tangle_error; };
struct io_error : tangle_error { using tangle_error::tangle_error; };

} // namespace tanglesim
