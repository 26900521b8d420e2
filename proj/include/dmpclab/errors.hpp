#pragma once

#include <stdexcept>
#include <string>

namespace dmpclab {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define DMPCLAB_DEFINE_ERROR(Name)          \
    struct Name : Error {                   \
        using Error::Error;                 \
    }

// graph construction
DMPCLAB_DEFINE_ERROR(InvalidEdge);
DMPCLAB_DEFINE_ERROR(DisconnectedGraph);
DMPCLAB_DEFINE_ERROR(AsymmetricWeights);

// linear algebra / model validation
DMPCLAB_DEFINE_ERROR(EigenSolverFailure);
DMPCLAB_DEFINE_ERROR(DimensionMismatch);
DMPCLAB_DEFINE_ERROR(NotStabilizable);

// offline design
DMPCLAB_DEFINE_ERROR(EmptyTightenedSet);
DMPCLAB_DEFINE_ERROR(InvalidHorizon);

// delayed communication
DMPCLAB_DEFINE_ERROR(DelayOutOfRange);
DMPCLAB_DEFINE_ERROR(NoCommonStamp);
DMPCLAB_DEFINE_ERROR(StampMismatch);
DMPCLAB_DEFINE_ERROR(StaleSolution);

// online optimization
DMPCLAB_DEFINE_ERROR(TubePreconditionViolated);
DMPCLAB_DEFINE_ERROR(InfeasibleProblem);

// scenario / trace I/O
DMPCLAB_DEFINE_ERROR(ParseError);
DMPCLAB_DEFINE_ERROR(SchemaError);
DMPCLAB_DEFINE_ERROR(MalformedTrace);

#undef DMPCLAB_DEFINE_ERROR

} // namespace dmpclab
