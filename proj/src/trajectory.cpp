#include "mepack/trajectory.hpp"

#include <stdexcept>

namespace mepack {

const char* to_string(TrajectoryKind kind) {
    switch (kind) {
        case TrajectoryKind::classical: return "classical";
        case TrajectoryKind::quantum: return "quantum";
        case TrajectoryKind::exact: return "exact";
    }
    return "unknown";
}

void Trajectory::push_back(double t, const StateQuad& s) {
    times.push_back(t);
    Q.push_back(s.Q);
    P.push_back(s.P);
    dQ.push_back(s.dQ);
    dP.push_back(s.dP);
}

void Trajectory::validate() const {
    const std::size_t n = times.size();
    if (Q.size() != n || P.size() != n || dQ.size() != n || dP.size() != n)
        throw std::invalid_argument("Trajectory: column lengths differ");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(dQ[i] > 0.0) || !(dP[i] > 0.0))
            throw std::invalid_argument("Trajectory: spreads must stay positive");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("Trajectory: times must be strictly increasing");
    }
}

}  // namespace mepack
