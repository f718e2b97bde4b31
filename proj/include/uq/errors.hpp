#pragma once

#include <stdexcept>
#include <string>

namespace uq {

// Base class for all toolkit errors so callers can catch the family at once.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define UQ_DEFINE_ERROR(Name)                 \
  struct Name : Error {                       \
    using Error::Error;                       \
  }

UQ_DEFINE_ERROR(NotPositiveDefinite);
UQ_DEFINE_ERROR(InvalidProbability);
UQ_DEFINE_ERROR(InvalidDf);
UQ_DEFINE_ERROR(InvalidProbVector);
UQ_DEFINE_ERROR(DimensionMismatch);
UQ_DEFINE_ERROR(CollinearDesign);
UQ_DEFINE_ERROR(TooFewObservations);
UQ_DEFINE_ERROR(InvalidAlpha);
UQ_DEFINE_ERROR(EmptyDataset);
UQ_DEFINE_ERROR(InvalidConfig);
UQ_DEFINE_ERROR(EmptyEnsemble);
UQ_DEFINE_ERROR(LengthMismatch);
UQ_DEFINE_ERROR(ShapeMismatch);
UQ_DEFINE_ERROR(DivergedTraining);
UQ_DEFINE_ERROR(InvalidT);
UQ_DEFINE_ERROR(EmptyInput);
UQ_DEFINE_ERROR(IndexOutOfRange);
UQ_DEFINE_ERROR(InsufficientCalibration);
UQ_DEFINE_ERROR(ParseError);
UQ_DEFINE_ERROR(MissingColumn);
UQ_DEFINE_ERROR(NonNumericCell);
UQ_DEFINE_ERROR(InfeasibleSplit);
UQ_DEFINE_ERROR(InvalidDomain);
UQ_DEFINE_ERROR(IoError);

#undef UQ_DEFINE_ERROR

}  // namespace uq
