#pragma once

#include <stdexcept>
#include <string>

namespace jacobilab {

/// Base class for every error this library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define JACOBILAB_DEFINE_ERROR(Name)          \
    class Name : public Error {               \
    public:                                   \
        using Error::Error;                   \
    }

// linalg_kernel
JACOBILAB_DEFINE_ERROR(InvalidMatrix);
JACOBILAB_DEFINE_ERROR(ZeroVector);
JACOBILAB_DEFINE_ERROR(EmptyInput);
JACOBILAB_DEFINE_ERROR(DegenerateBasis);

// curvature_models
JACOBILAB_DEFINE_ERROR(SymmetryConflict);
JACOBILAB_DEFINE_ERROR(BianchiViolation);
JACOBILAB_DEFINE_ERROR(NotSkew);
JACOBILAB_DEFINE_ERROR(DegeneratePlane);
JACOBILAB_DEFINE_ERROR(InvalidModelParams);

// jacobi_spectral
JACOBILAB_DEFINE_ERROR(NotTwoRoot);

// structure_probes
JACOBILAB_DEFINE_ERROR(NoDualPairsFound);

// admissibility
JACOBILAB_DEFINE_ERROR(InvalidPattern);

// root_factorizer
JACOBILAB_DEFINE_ERROR(NotSimpleRootTwoRoot);
JACOBILAB_DEFINE_ERROR(MuNotConstant);
JACOBILAB_DEFINE_ERROR(RankExceeded);
JACOBILAB_DEFINE_ERROR(SignInconsistency);
JACOBILAB_DEFINE_ERROR(SkewnessViolation);
JACOBILAB_DEFINE_ERROR(SingularP);
JACOBILAB_DEFINE_ERROR(OddMultiplicity);

// serialization
JACOBILAB_DEFINE_ERROR(FileError);
JACOBILAB_DEFINE_ERROR(SchemaError);

#undef JACOBILAB_DEFINE_ERROR

}  // namespace jacobilab
