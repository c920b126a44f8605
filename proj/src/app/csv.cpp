#include "resinet/app/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace resinet::app {

std::string format_float(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRecord>& records) {
    out << kMetricsHeader << '\n';
    for (const MetricsRecord& m : records) {
        out << m.step << ',' << format_float(m.lambda) << ',' << format_float(m.area) << ','
            << format_float(m.f_obj) << ',' << (m.theta ? format_float(*m.theta) : "") << ','
            << format_float(m.mean_ptheta) << ',' << format_float(m.gains.sigma) << ','
            << format_float(m.gains.psi) << ',' << format_float(m.gains.zeta) << ',' << m.n_alive << ','
            << (m.connected ? 1 : 0) << '\n';
    }
}

void write_metrics_csv(const std::string& path, const std::vector<MetricsRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    write_metrics_csv(out, records);
}

namespace {

double parse_number(const std::string& field, const std::string& path, int line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty())
        throw SchemaError(path + ":" + std::to_string(line) + ": not a number: '" + field + "'");
    return v;
}

}  // namespace

std::vector<MetricsRecord> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kMetricsHeader)
        throw SchemaError(path + ": header does not match '" + std::string(kMetricsHeader) + "'");

    std::vector<MetricsRecord> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 11)
            throw SchemaError(path + ":" + std::to_string(lineno) + ": expected 11 fields, got " +
                              std::to_string(f.size()));
        MetricsRecord m;
        m.step = static_cast<std::size_t>(parse_number(f[0], path, lineno));
        m.lambda = parse_number(f[1], path, lineno);
        m.area = parse_number(f[2], path, lineno);
        m.f_obj = parse_number(f[3], path, lineno);
        if (!f[4].empty()) m.theta = parse_number(f[4], path, lineno);
        m.mean_ptheta = parse_number(f[5], path, lineno);
        m.gains = {parse_number(f[6], path, lineno), parse_number(f[7], path, lineno),
                   parse_number(f[8], path, lineno)};
        m.n_alive = static_cast<std::size_t>(parse_number(f[9], path, lineno));
        m.connected = parse_number(f[10], path, lineno) != 0.0;
        out.push_back(m);
    }
    return out;
}

void write_envelope_csv(const std::string& path, const std::vector<EnvelopePoint>& envelope) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "step,mean_f_obj,stddev_f_obj\n";
    for (std::size_t t = 0; t < envelope.size(); ++t)
        out << t << ',' << format_float(envelope[t].mean) << ',' << format_float(envelope[t].stddev) << '\n';
}

void write_rounds_csv(const std::string& path, const std::vector<RoundLog>& rounds) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "step,sigma,psi,zeta,predicted_lambda,predicted_area,f_obj,evaluations\n";
    for (const RoundLog& r : rounds) {
        const ObjectiveSample& b = r.result.best_sample;
        out << r.step << ',' << format_float(b.gains.sigma) << ',' << format_float(b.gains.psi) << ','
            << format_float(b.gains.zeta) << ',' << format_float(b.predicted_lambda) << ','
            << format_float(b.predicted_area) << ',' << format_float(b.f_obj) << ',' << r.result.samples.size()
            << '\n';
    }
}

}  // namespace resinet::app
