#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "spincycle/field.h"
#include "spincycle/phases.h"
#include "spincycle/spinor.h"

namespace spincycle {

// Raised when a phase extraction is attempted for a state that does not
// return to itself (up to a phase) after the segment.
class NonCyclicError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline constexpr int kDefaultSteps = 4096;
inline constexpr int kMinSteps = 100;
inline constexpr double kDefaultCyclicityTol = 1e-6;

// Bloch-sphere trajectory with polar and unwrapped azimuth tracks.
struct BlochPath {
  std::vector<double> t;
  std::vector<Eigen::Vector3d> n;
  std::vector<double> theta;
  std::vector<double> phi;  // unwrapped: no jumps > pi between samples

  static BlochPath from_samples(std::vector<double> times,
                                std::vector<Eigen::Vector3d> samples);

  double closure_defect() const;   // |n(end) - n(0)|
  double max_norm_defect() const;  // max over samples of | ||n|| - 1 |
};

struct CyclicityReport {
  bool cyclic = false;
  double defect = 0.0;  // 1 - |<psi(0)|psi(T)>|
};

struct ExtractionResult {
  PhaseTriple phases;
  double overlap_phase = 0.0;  // arg <psi(0)|psi(T)>, principal branch
  double cyclicity_defect = 0.0;
};

// Fixed-step classical RK4 for i d/dt psi = H(t) psi.  Returns steps+1
// samples at uniform times over [0, duration].
std::vector<SpinorState> propagate_spinor(const RotatingFieldSegment& seg,
                                          const SpinorState& initial,
                                          int steps = kDefaultSteps);

// Fixed-step classical RK4 for d/dt n = b(t) x n.
BlochPath propagate_bloch(const RotatingFieldSegment& seg,
                          const Eigen::Vector3d& initial,
                          int steps = kDefaultSteps);

CyclicityReport check_cyclicity(const RotatingFieldSegment& seg,
                                const SpinorState& initial,
                                int steps = kDefaultSteps,
                                double tol = kDefaultCyclicityTol);

// Dynamic phase by quadrature of -<psi|H|psi> dt along the trajectory,
// geometric phase as -1/2 int (1 - cos theta) dphi along the actual Bloch
// path with the azimuth winding kept, total = dynamic + geometric.
// Throws NonCyclicError if the initial state is not cyclic for the segment.
ExtractionResult extract_phases(const RotatingFieldSegment& seg,
                                const SpinorState& initial,
                                int steps = kDefaultSteps,
                                double cyclicity_tol = kDefaultCyclicityTol);

PhaseTriple extract_phase_triple(const RotatingFieldSegment& seg,
                                 const SpinorState& initial,
                                 int steps = kDefaultSteps,
                                 double cyclicity_tol = kDefaultCyclicityTol);

// -1/2 closed-loop integral of (1 - cos theta) dphi over a sampled closed
// path.  Throws std::invalid_argument on an open path.
double solid_angle_of_path(const BlochPath& path, double closure_tol = 1e-6);

// Solid angle swept by the field direction over one cycle; equals
// 2*pi*(1 - b_z/|b|) for the rotating drive.  Throws when the field
// magnitude vanishes.
double berry_solid_angle(const RotatingFieldSegment& seg);

// Step count giving ~1e-6 phase accuracy per cycle for this drive;
// never below kDefaultSteps, always even.
int recommended_steps(const RotatingFieldSegment& seg);

// ---------------------------------------------------------------------------
// Two-qubit (4-dimensional) propagation.
//
// Basis order |00>, |01>, |10>, |11> with the first label the control qubit.
// The spin-spin term is -(J/2) sigma_z x sigma_z, signed so that a control
// prepared in computational |delta> shifts the target longitudinal frequency
// by (2*delta - 1) * J.
// ---------------------------------------------------------------------------

Eigen::Matrix4cd two_qubit_hamiltonian(const RotatingFieldSegment& control,
                                       const RotatingFieldSegment& target,
                                       double coupling, double t);

std::vector<Eigen::Vector4cd> propagate_two_qubit_full(
    const RotatingFieldSegment& control, const RotatingFieldSegment& target,
    double coupling, const Eigen::Vector4cd& initial, int steps = kDefaultSteps);

// Conditional target phases from the full 4-dimensional model with an
// undriven control prepared in |delta> and the target prepared in the
// conditional cyclic state.  The control's own energy is subtracted so the
// result is directly comparable with the effective single-qubit model.
ExtractionResult extract_conditional_phases_full(
    const RotatingFieldSegment& control, const RotatingFieldSegment& target,
    double coupling, int delta, int steps = kDefaultSteps,
    double cyclicity_tol = kDefaultCyclicityTol);

// |principal(total target phase from the full model - effective model)| for
// a driven control; the control's own one-qubit phase is divided out via a
// reference propagation.  Used to quantify how fast the effective model
// becomes exact as the control detuning grows.
double effective_model_phase_error(const RotatingFieldSegment& control,
                                   const RotatingFieldSegment& target,
                                   double coupling, int delta,
                                   int steps = kDefaultSteps);

}  // namespace spincycle
