#include <json.hpp>

#include <cstdio>
#include <ostream>

#include "stabreg/io.hpp"
#include "stabreg/trace.hpp"

namespace stabreg {

using nlohmann::json;

int RunTrace::epoch_of(long t) const {
    int k = epochs.empty() ? 0 : epochs.back().k;
    for (const EpochRecord& e : epochs) {
        if (t < e.t_end) return e.k;
        k = e.k;
    }
    return k;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json vec_to_json(const Vector& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

}  // namespace

void write_trace_csv(std::ostream& out, const RunTrace& trace, double f_star, double clamp) {
    const bool epochal = trace.algorithm == "stabreg_convex";
    out << (epochal ? "t,obj_gap,epoch_k,lambda_k" : "t,obj_gap") << "\n";
    for (std::size_t t = 0; t < trace.iterates.size(); ++t) {
        double gap = 0.0;
        if (trace.objective.size() == trace.iterates.size()) {
            gap = std::max(trace.objective[t] - f_star, clamp);
        }
        out << t << "," << fmt(gap);
        if (epochal) {
            int k = trace.epoch_of(static_cast<long>(t));
            double lambda =
                trace.epochs.empty() ? 0.0 : trace.epochs[static_cast<std::size_t>(k)].lambda;
            out << "," << k << "," << fmt(lambda);
        }
        out << "\n";
    }
}

void write_trace_json(std::ostream& out, const RunTrace& trace) {
    json j;
    j["schema"] = kReportSchema;
    j["algorithm"] = trace.algorithm;
    j["termination"] = trace.termination;
    j["beta"] = trace.beta;
    j["lipschitz"] = trace.lipschitz;
    j["distance_bound"] = trace.distance_bound;
    j["n"] = trace.n;
    j["seed"] = trace.seed;
    j["horizon"] = trace.horizon();
    if (trace.algorithm == "stabreg_rel") {
        j["lambda"] = trace.lambda;
        j["precondition_ok"] = trace.precondition_ok;
    }
    json epochs = json::array();
    for (const EpochRecord& e : trace.epochs) {
        json je;
        je["k"] = e.k;
        je["lambda"] = e.lambda;
        je["m"] = e.m;
        je["t_half"] = e.t_half;
        je["t_start"] = e.t_start;
        je["t_end"] = e.t_end;
        je["y_start"] = vec_to_json(e.y_start);
        je["y_end"] = vec_to_json(e.y_end);
        json inner = json::array();
        for (const Vector& v : e.inner) inner.push_back(vec_to_json(v));
        je["inner"] = inner;
        epochs.push_back(std::move(je));
    }
    j["epochs"] = epochs;
    j["final_iterate"] = vec_to_json(trace.final_iterate());
    out << j.dump(2) << "\n";
}

namespace {

json report_to_json(const CheckReport& report) {
    json j;
    j["name"] = report.name;
    j["status"] = to_string(report.status);
    j["worst_slack"] = report.worst_slack;
    if (!report.note.empty()) j["note"] = report.note;
    json rows = json::array();
    for (const CheckRow& row : report.rows) {
        rows.push_back({{"label", row.label}, {"lhs", row.lhs}, {"rhs", row.rhs}, {"ok", row.ok}});
    }
    j["rows"] = rows;
    return j;
}

}  // namespace

std::string to_json_string(const CheckReport& report) {
    json j = report_to_json(report);
    j["schema"] = kReportSchema;
    return j.dump(2) + "\n";
}

std::string to_json_string(const LemmaReport& report) {
    json j;
    j["schema"] = kReportSchema;
    j["all_passed"] = report.all_passed();
    j["inconclusive"] = report.any_inconclusive();
    json entries = json::object();
    for (const auto& [name, entry] : report.entries) entries[name] = report_to_json(entry);
    j["lemmas"] = entries;
    return j.dump(2) + "\n";
}

std::string to_json_string(const StabilityEstimate& estimate) {
    json j;
    j["schema"] = kReportSchema;
    j["algorithm"] = estimate.algorithm;
    j["kind"] = estimate.kind;  // sampled lower bound on the sup, never the sup
    j["n"] = estimate.n;
    j["trials"] = estimate.trials;
    j["pool_size"] = estimate.pool_size;
    j["seed"] = estimate.seed;
    json points = json::array();
    for (const StabilityPoint& p : estimate.points) {
        json jp;
        jp["checkpoint"] = p.checkpoint;
        jp["eps_hat"] = p.eps_hat;
        jp["per_trial"] = p.per_trial;
        points.push_back(std::move(jp));
    }
    j["points"] = points;
    return j.dump(2) + "\n";
}

std::string to_json_string(const ScalingReport& report) {
    json j;
    j["schema"] = kReportSchema;
    j["pass"] = report.pass;
    j["trivially_stable"] = report.trivially_stable;
    if (!report.note.empty()) j["note"] = report.note;
    j["slope_t"] = {{"slope", report.slope_t.slope},
                    {"points", report.slope_t.points},
                    {"residual", report.slope_t.residual}};
    j["slope_n"] = {{"slope", report.slope_n.slope},
                    {"points", report.slope_n.points},
                    {"residual", report.slope_n.residual}};
    j["halving_ratios"] = report.halving_ratios;
    return j.dump(2) + "\n";
}

void write_curve_csv(std::ostream& out, const std::vector<double>& x,
                     const std::vector<double>& y) {
    out << "x,y\n";
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        out << fmt(x[i]) << "," << fmt(y[i]) << "\n";
    }
}

}  // namespace stabreg
