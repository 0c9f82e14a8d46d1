#include "tmoctl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include <json.hpp>

#include "tmoctl/errors.hpp"

namespace tmoctl {

MetricsReport compute_metrics(const std::vector<double>& e, const std::vector<double>& u) {
    if (e.empty() || e.size() != u.size())
        throw Error("compute_metrics: sample vectors must be nonempty and of equal length");
    MetricsReport m;
    double acc = 0.0;
    for (size_t i = 0; i < e.size(); ++i) {
        acc += e[i] * e[i];
        m.e_max_abs = std::max(m.e_max_abs, std::abs(e[i]));
        m.u_max_abs = std::max(m.u_max_abs, std::abs(u[i]));
    }
    m.e_rms = std::sqrt(acc / static_cast<double>(e.size()));
    return m;
}

namespace {

std::vector<double> tau_columns(const std::vector<MetricsReport>& reports) {
    std::set<double> taus;
    for (const auto& r : reports) taus.insert(r.tau_factor);
    return {taus.begin(), taus.end()};
}

const MetricsReport* find(const std::vector<MetricsReport>& reports, const std::string& exp,
                          const std::string& ctrl, double tau) {
    for (const auto& r : reports)
        if (r.experiment == exp && r.controller == ctrl && r.tau_factor == tau) return &r;
    return nullptr;
}

}  // namespace

void write_metrics_csv(std::ostream& os, const std::vector<MetricsReport>& reports) {
    const auto taus = tau_columns(reports);
    os << "experiment,controller,metric,unit";
    char buf[64];
    for (double t : taus) {
        std::snprintf(buf, sizeof(buf), ",tau_%.3g", t);
        os << buf;
    }
    os << "\n";
    const struct {
        const char* name;
        const char* unit;
        double MetricsReport::*field;
        double scale;
    } metrics[] = {{"e_rms", "mm", &MetricsReport::e_rms, 1e3},
                   {"e_max_abs", "mm", &MetricsReport::e_max_abs, 1e3},
                   {"u_max_abs", "V", &MetricsReport::u_max_abs, 1.0}};
    for (const char* exp : {"disturbance", "tracking"}) {
        for (const char* ctrl : {"hinf", "fo"}) {
            for (const auto& metric : metrics) {
                bool any = false;
                for (double t : taus)
                    if (find(reports, exp, ctrl, t)) any = true;
                if (!any) continue;
                os << exp << ',' << ctrl << ',' << metric.name << ',' << metric.unit;
                for (double t : taus) {
                    const MetricsReport* r = find(reports, exp, ctrl, t);
                    if (r) {
                        std::snprintf(buf, sizeof(buf), ",%.9g", (r->*metric.field) * metric.scale);
                        os << buf;
                    } else {
                        os << ",";
                    }
                }
                os << "\n";
            }
        }
    }
}

std::string metrics_to_json(const std::vector<MetricsReport>& reports) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : reports) {
        j.push_back({{"experiment", r.experiment},
                     {"controller", r.controller},
                     {"tau_factor", r.tau_factor},
                     {"e_rms_m", r.e_rms},
                     {"e_max_abs_m", r.e_max_abs},
                     {"u_max_abs_V", r.u_max_abs}});
    }
    return j.dump(2);
}

}  // namespace tmoctl
