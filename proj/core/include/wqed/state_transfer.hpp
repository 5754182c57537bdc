#pragma once

#include <string>
#include <vector>

#include "wqed/excitation_subspace.hpp"
#include "wqed/model.hpp"
#include "wqed/polaron_two.hpp"

namespace wqed {

struct TightBinding {
    double epsilon = 0;
    double tau = 0;
    double e_s = 0;
    double e_a = 0;

    // Eigenvalues of [[eps, tau], [tau, eps]], ascending.
    std::pair<double, double> eigenvalues() const;
};

TightBinding extract_tight_binding(const BoundState& symmetric, const BoundState& antisymmetric);
// Picks the symmetric and antisymmetric states from a list; throws SolverError if either is missing.
TightBinding extract_tight_binding(const std::vector<BoundState>& states);

enum class RampShape { linear, smoothstep, instantaneous };
std::string to_string(RampShape s);
RampShape ramp_shape_from_string(const std::string& s);

struct ProtocolSegment {
    std::string name;
    double duration = 0;  // 0 for instantaneous
    RampShape shape1 = RampShape::linear;
    RampShape shape2 = RampShape::linear;
    double g1_end = 0;
    double g2_end = 0;
};

struct ProtocolSchedule {
    double g1_start = 0;
    double g2_start = 0;
    std::vector<ProtocolSegment> segments;

    double total_time() const;
    // Couplings at time t; at a jump the value after the jump is returned.
    std::pair<double, double> couplings_at(double t) const;
    void validate() const;

    // Adiabatic load of qubit 1, diabatic switch-on of qubit 2, hold, diabatic switch-off of
    // qubit 1, adiabatic unload of qubit 2.
    static ProtocolSchedule standard(double g, double ramp_time, double hold_time);
};

struct TransferOptions {
    double dt = 1.0;
    int sample_every = 100;
    double krylov_tolerance = 1e-12;
    int krylov_max = 30;
};

struct TransferTrace {
    std::vector<double> times;
    std::vector<double> g1, g2;
    std::vector<double> population_left;   // |amplitude on qubit 1|^2
    std::vector<double> population_right;  // |amplitude on qubit 2|^2
    double fidelity = 0;
    double norm_drift = 0;
    long steps = 0;
    long frame_solves = 0;
};

// Quasi-static polaron frame recomputed from the instantaneous couplings at each step; the
// amplitude vector is carried across frame changes.
TransferTrace simulate_protocol(const ModelParams& model, const ProtocolSchedule& schedule,
                                const TransferOptions& opt = {});

// Two-level model: hopping tau while both couplings are nonzero, start in |L>.
TransferTrace simulate_tight_binding(const TightBinding& tb, const ProtocolSchedule& schedule, double dt = 1.0);

struct SegmentAdiabaticity {
    std::string name;
    double max_rate = 0;  // max |dg/dt|
    double min_gap = 0;   // band bottom minus lowest bound-state energy
    double ratio = 0;     // max_rate / min_gap^2
    bool diabatic = false;
    bool violates = false;
};

std::vector<SegmentAdiabaticity> adiabaticity_check(const ProtocolSchedule& schedule, const ModelParams& model,
                                                    double threshold = 0.1, int samples = 33);

struct EqualCouplingDynamics {
    double first_max_time = 0;  // first maximum of the right bound-state population
    double first_max_population = 0;
    double rabi_period = 0;  // 2 * first_max_time
};

// Exact propagation at constant equal couplings g starting from the qubit-1 bound state.
EqualCouplingDynamics equal_coupling_dynamics(const ModelParams& model, double g);

}  // namespace wqed
