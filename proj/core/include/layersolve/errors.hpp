#pragma once

#include <stdexcept>
#include <string>

namespace layersolve {

/// Base class for all solver failures raised by this library.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

// shooting / classification
struct BracketNotSeparating : SolverError { using SolverError::SolverError; };
struct BlowupBeforeClassification : SolverError { using SolverError::SolverError; };

// collocation / Newton
struct NewtonDiverged : SolverError { using SolverError::SolverError; };
struct MaxItersExceeded : SolverError { using SolverError::SolverError; };

// evaluation / grids
struct OutOfDomain : SolverError { using SolverError::SolverError; };
struct GridMismatch : SolverError { using SolverError::SolverError; };

// composite assembly
struct NegativeRadicand : SolverError { using SolverError::SolverError; };
struct ConfigInfeasible : SolverError { using SolverError::SolverError; };
struct RegionEmpty : SolverError { using SolverError::SolverError; };

// spectra
struct TruncationSensitive : SolverError { using SolverError::SolverError; };
struct MeshTooCoarse : SolverError { using SolverError::SolverError; };
struct NearSingular : SolverError { using SolverError::SolverError; };

// scans and fits
struct FitUnstable : SolverError { using SolverError::SolverError; };
struct NonPositiveValue : SolverError { using SolverError::SolverError; };
struct NoFitPossible : SolverError { using SolverError::SolverError; };
struct ClassificationAmbiguous : SolverError { using SolverError::SolverError; };

// quadrature
struct TailNotNegligible : SolverError { using SolverError::SolverError; };
struct DivisionUnstable : SolverError { using SolverError::SolverError; };

}  // namespace layersolve
