#include "syzygy/output.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>

#include <json.hpp>

namespace syzygy {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view bytes) {
    static const char* digits = "0123456789abcdef";
    std::uint64_t h = fnv1a64(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open for writing: " + tmp.string());
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

OutputFile write_output(const std::filesystem::path& dir, const std::string& name,
                        std::string_view content) {
    std::filesystem::create_directories(dir);
    write_file_atomic(dir / name, content);
    return OutputFile{name, fnv1a64_hex(content), content.size()};
}

void write_manifest(const std::filesystem::path& dir, Manifest manifest) {
    std::sort(manifest.files.begin(), manifest.files.end(),
              [](const OutputFile& a, const OutputFile& b) { return a.name < b.name; });
    nlohmann::json j;
    j["schema_version"] = 1;
    j["files"] = nlohmann::json::array();
    for (const OutputFile& f : manifest.files)
        j["files"].push_back({{"name", f.name}, {"fnv1a64", f.digest}, {"bytes", f.bytes}});
    write_file_atomic(dir / "manifest.json", j.dump(2) + "\n");
}

std::string events_csv(const std::vector<Event>& events) {
    std::string out = "t,kind,middle_body,delta1,delta2,H,I,grazing\n";
    for (const Event& e : events) {
        out += format_double(e.t);
        out += ',';
        out += to_string(e.kind);
        out += ',';
        if (e.middle_body) out += std::to_string(*e.middle_body);
        out += ',';
        out += format_double(e.delta1);
        out += ',';
        out += format_double(e.delta2);
        out += ',';
        out += format_double(e.H);
        out += ',';
        out += format_double(e.I);
        out += ',';
        out += e.grazing ? '1' : '0';
        out += '\n';
    }
    return out;
}

std::string trajectory_csv(const DenseTrajectory& traj, int samples) {
    std::string out = "t,x1,y1,x2,y2,x3,y3,vx1,vy1,vx2,vy2,vx3,vy3,H,I,delta1,delta2\n";
    if (traj.empty()) return out;
    samples = std::max(samples, 2);
    const double t0 = traj.span_begin(), t1 = traj.span_end();
    for (int i = 0; i < samples; ++i) {
        const double t = (t1 > t0 && !traj.steps.empty())
                             ? t0 + (t1 - t0) * (static_cast<double>(i) / (samples - 1))
                             : t0;
        const BodyState s = traj.steps.empty() ? traj.states.front() : dense_eval(traj, t);
        const MassWeightedFrame f = mass_weighted_frame(traj.masses, s);
        out += format_double(s.t);
        for (int b = 0; b < 3; ++b) {
            out += ',';
            out += format_double(s.r(b).x());
            out += ',';
            out += format_double(s.r(b).y());
        }
        for (int b = 0; b < 3; ++b) {
            out += ',';
            out += format_double(s.v(b).x());
            out += ',';
            out += format_double(s.v(b).y());
        }
        out += ',';
        out += format_double(total_energy(traj.masses, s));
        out += ',';
        out += format_double(angular_momentum(traj.masses, s));
        out += ',';
        out += format_double(f.delta1);
        out += ',';
        out += format_double(f.delta2);
        out += '\n';
        if (traj.steps.empty()) break;
    }
    return out;
}

}  // namespace syzygy
