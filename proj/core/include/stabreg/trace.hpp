#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stabreg/vecspace.hpp"

namespace stabreg {

struct EpochRecord {
    int k = 0;
    double lambda = 0.0;
    long m = 0;        // inner restarts of the base method
    long t_half = 0;   // steps per inner call
    long t_start = 0;  // cumulative step index at epoch start
    long t_end = 0;    // t_start + m * t_half
    Vector y_start;    // y_k
    Vector y_end;      // y_{k+1}
    std::vector<Vector> inner;  // y_{k,1} .. y_{k,m}
};

struct RunTrace {
    std::string algorithm;           // "stabreg_convex" | "stabreg_rel"
    std::vector<Vector> iterates;    // x_0 .. x_T
    std::vector<double> objective;   // F_S(x_t); empty when not recorded
    std::vector<EpochRecord> epochs; // epoch wrapper only
    std::string termination;         // "t_max" | "lambda_underflow" | "steps"

    // shared metadata
    double beta = 0.0;
    double lipschitz = 0.0;
    double distance_bound = 0.0;  // D
    long n = 0;
    std::uint64_t seed = 0;

    // mirror-descent metadata
    double lambda = 0.0;
    bool precondition_ok = true;

    long horizon() const { return static_cast<long>(iterates.size()) - 1; }
    const Vector& final_iterate() const { return iterates.back(); }

    // epoch index covering step t (last completed epoch for trailing steps)
    int epoch_of(long t) const;
};

// CSV rows `t,obj_gap[,epoch_k,lambda_k]`; gaps are relative to a supplied
// optimum value and clamped below at `clamp`.
void write_trace_csv(std::ostream& out, const RunTrace& trace, double f_star, double clamp);

// JSON document with metadata and per-epoch records.
void write_trace_json(std::ostream& out, const RunTrace& trace);

}  // namespace stabreg
