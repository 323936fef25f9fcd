#pragma once

#include <stdexcept>

namespace iclog {

struct EmptyTemplate : std::runtime_error { using std::runtime_error::runtime_error; };
struct IoError : std::runtime_error { using std::runtime_error::runtime_error; };
struct BadPattern : std::runtime_error { using std::runtime_error::runtime_error; };
struct EmptyCorpus : std::runtime_error { using std::runtime_error::runtime_error; };
struct EmptyInput : std::runtime_error { using std::runtime_error::runtime_error; };
struct RatioTooSmall : std::runtime_error { using std::runtime_error::runtime_error; };
struct BadDocId : std::runtime_error { using std::runtime_error::runtime_error; };
struct NetworkError : std::runtime_error { using std::runtime_error::runtime_error; };
struct AuthError : std::runtime_error { using std::runtime_error::runtime_error; };
struct OracleMiss : std::runtime_error { using std::runtime_error::runtime_error; };
struct UnparseableResponse : std::runtime_error { using std::runtime_error::runtime_error; };
struct LengthMismatch : std::runtime_error { using std::runtime_error::runtime_error; };
struct TooFewExamples : std::runtime_error { using std::runtime_error::runtime_error; };
struct ConfigError : std::runtime_error { using std::runtime_error::runtime_error; };

}  // namespace iclog
