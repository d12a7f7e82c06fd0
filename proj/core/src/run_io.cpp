#include "muskat/run_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace muskat {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json domain_to_json(const DomainSpec& d) {
    json j;
    j["plane"] = d.half_plane() ? "half_plane" : "whole_plane";
    if (d.periodic_mode()) {
        j["boundary"] = "periodic";
        j["period"] = d.period;
    } else {
        j["boundary"] = "asymptotic";
        j["psi_inf"] = d.psi_inf;
        j["half_width"] = d.half_width;
    }
    return j;
}

DomainSpec domain_from_json(const json& j) {
    const PlaneKind plane = j.at("plane").get<std::string>() == "half_plane"
                                ? PlaneKind::HalfPlane
                                : PlaneKind::WholePlane;
    if (j.at("boundary").get<std::string>() == "periodic")
        return DomainSpec::periodic(plane, j.at("period").get<double>());
    return DomainSpec::asymptotic(plane, j.at("psi_inf").get<double>(),
                                  j.at("half_width").get<double>());
}

}  // namespace

std::string snapshot_to_json(double t, const InterfaceProfile& p) {
    json j;
    j["t"] = t;
    j["domain"] = domain_to_json(p.domain());
    j["N"] = p.size();
    j["dx"] = p.dx();
    j["samples"] = p.samples();
    return j.dump();
}

std::pair<double, InterfaceProfile> snapshot_from_json(const std::string& text) {
    const json j = json::parse(text);
    InterfaceProfile p(domain_from_json(j.at("domain")),
                       j.at("samples").get<std::vector<double>>());
    if (j.at("N").get<int>() != p.size())
        throw std::runtime_error("snapshot: N does not match the sample count");
    return {j.at("t").get<double>(), std::move(p)};
}

std::string diagnostics_to_csv(const std::vector<DiagnosticsRecord>& records) {
    std::string out = kDiagnosticsHeader;
    out += '\n';
    for (const auto& r : records) {
        out += fmt(r.t);
        out += ',';
        out += fmt(r.max_slope);
        out += ',';
        out += fmt(r.l1_mass);
        out += ',';
        out += fmt(r.l2_energy);
        out += ',';
        if (r.lambda_dissipation) out += fmt(*r.lambda_dissipation);
        out += ',';
        if (r.ln_dissipation) out += fmt(*r.ln_dissipation);
        out += ',';
        out += fmt(r.min_height);
        out += ',';
        out += fmt(r.holder_fxx);
        out += ',';
        out += fmt(r.blowup_accumulator);
        out += '\n';
    }
    return out;
}

std::vector<DiagnosticsRecord> diagnostics_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int row = 0;
    std::vector<DiagnosticsRecord> out;
    auto fail = [&](const std::string& why) {
        throw std::runtime_error("diagnostics.csv row " + std::to_string(row) +
                                 ": " + why);
    };
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (row == 1) {
            if (line != kDiagnosticsHeader) fail("unexpected header");
            continue;
        }
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string cur;
        for (char c : line) {
            if (c == ',') {
                fields.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        fields.push_back(cur);
        if (fields.size() != 9) fail("expected 9 fields, found " +
                                     std::to_string(fields.size()));
        auto num = [&](const std::string& s) {
            try {
                size_t pos = 0;
                const double v = std::stod(s, &pos);
                if (pos != s.size()) fail("trailing characters in number '" + s + "'");
                return v;
            } catch (const std::runtime_error&) {
                throw;
            } catch (...) {
                fail("cannot parse number '" + s + "'");
                return 0.0;
            }
        };
        DiagnosticsRecord r;
        r.t = num(fields[0]);
        r.max_slope = num(fields[1]);
        r.l1_mass = num(fields[2]);
        r.l2_energy = num(fields[3]);
        if (!fields[4].empty()) r.lambda_dissipation = num(fields[4]);
        if (!fields[5].empty()) r.ln_dissipation = num(fields[5]);
        r.min_height = num(fields[6]);
        r.holder_fxx = num(fields[7]);
        r.blowup_accumulator = num(fields[8]);
        out.push_back(r);
    }
    if (row == 0) throw std::runtime_error("diagnostics.csv row 1: empty file");
    return out;
}

std::string summary_to_json(const RunSummary& s) {
    json j;
    j["schema_version"] = s.schema_version;
    j["termination"] = s.termination;
    j["t_final"] = s.t_final;
    j["records_count"] = s.records_count;
    j["max_slope_monotone"] = s.max_slope_monotone;
    j["mass_drift"] = s.mass_drift;
    j["blowup_accumulator_final"] = s.blowup_accumulator_final;
    return j.dump(2);
}

RunSummary summary_from_json(const std::string& text) {
    const json j = json::parse(text);
    RunSummary s;
    s.schema_version = j.at("schema_version").get<int>();
    s.termination = j.at("termination").get<std::string>();
    s.t_final = j.at("t_final").get<double>();
    s.records_count = j.at("records_count").get<long>();
    s.max_slope_monotone = j.at("max_slope_monotone").get<bool>();
    s.mass_drift = j.at("mass_drift").get<double>();
    s.blowup_accumulator_final = j.at("blowup_accumulator_final").get<double>();
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace muskat
