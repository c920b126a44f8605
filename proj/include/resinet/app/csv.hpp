#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "resinet/sim.hpp"

namespace resinet::app {

inline constexpr const char* kMetricsHeader =
    "step,lambda,area,f_obj,theta,mean_ptheta,sigma,psi,zeta,n_alive,connected";

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Floats use 9 significant digits; theta is empty when undefined.
void write_metrics_csv(std::ostream& out, const std::vector<MetricsRecord>& records);
void write_metrics_csv(const std::string& path, const std::vector<MetricsRecord>& records);

/// Throws SchemaError when the header or a row does not match kMetricsHeader.
std::vector<MetricsRecord> read_metrics_csv(const std::string& path);

void write_envelope_csv(const std::string& path, const std::vector<EnvelopePoint>& envelope);
void write_rounds_csv(const std::string& path, const std::vector<RoundLog>& rounds);

std::string format_float(double x);

}  // namespace resinet::app
