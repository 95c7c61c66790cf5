#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ltcsim {

// Base class for all domain errors. `code()` is a stable machine-parseable
// identifier; `what()` carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define LTCSIM_ERROR_TYPE(Name, code_str)                                   \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(code_str, what) {}       \
  };

LTCSIM_ERROR_TYPE(NonFiniteState, "nonfinite_state")
LTCSIM_ERROR_TYPE(NonFiniteLoss, "nonfinite_loss")
LTCSIM_ERROR_TYPE(DegenerateChannel, "degenerate_channel")
LTCSIM_ERROR_TYPE(TooFewSegments, "too_few_segments")
LTCSIM_ERROR_TYPE(SearchExhausted, "search_exhausted")
LTCSIM_ERROR_TYPE(NegativeMass, "negative_mass")
LTCSIM_ERROR_TYPE(EmptySeries, "empty_series")
LTCSIM_ERROR_TYPE(HorizonMismatch, "horizon_mismatch")
LTCSIM_ERROR_TYPE(UntrainedController, "untrained_controller")
LTCSIM_ERROR_TYPE(UntrainedModels, "untrained_models")
LTCSIM_ERROR_TYPE(MissingDataset, "missing_dataset")
LTCSIM_ERROR_TYPE(IoError, "io_error")
LTCSIM_ERROR_TYPE(SchemaMismatch, "schema_mismatch")

#undef LTCSIM_ERROR_TYPE

}  // namespace ltcsim
