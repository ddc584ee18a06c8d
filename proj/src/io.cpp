#include "slantsurf/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace slantsurf {

namespace {

void put(std::ostream& os, double v, bool comma = true) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    os << buf;
    if (comma) os << ',';
}

}  // namespace

void write_frames_csv(std::ostream& os, std::span<const FrameSample> frames,
                      const std::vector<double>* det_q_series,
                      const std::vector<double>* det_a_series,
                      const std::vector<double>* f_series) {
    os << "s,c.x1,c.x2,c.x3,q.x1,q.x2,q.x3,h.x1,h.x2,h.x3,a.x1,a.x2,a.x3,"
          "k1,k2,ratio,det_q,det_a,f,delta\n";
    const double nan = std::nan("");
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const FrameSample& f = frames[i];
        put(os, f.s);
        put(os, f.c.x1); put(os, f.c.x2); put(os, f.c.x3);
        put(os, f.q.x1); put(os, f.q.x2); put(os, f.q.x3);
        put(os, f.h.x1); put(os, f.h.x2); put(os, f.h.x3);
        put(os, f.a.x1); put(os, f.a.x2); put(os, f.a.x3);
        put(os, f.k1);
        put(os, f.k2);
        put(os, f.k2 != 0.0 ? f.k1 / f.k2 : nan);
        put(os, det_q_series && i < det_q_series->size() ? (*det_q_series)[i] : nan);
        put(os, det_a_series && i < det_a_series->size() ? (*det_a_series)[i] : nan);
        put(os, f_series && i < f_series->size() ? (*f_series)[i] : nan);
        put(os, f.drall, false);
        os << '\n';
    }
}

void write_kv(std::ostream& os, const std::string& key, const std::string& value) {
    os << key << ": " << value << '\n';
}

void write_kv(std::ostream& os, const std::string& key, double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    os << key << ": " << buf << '\n';
}

std::string format_axis(const LorentzVec3& v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "(%.12g, %.12g, %.12g)", v.x1, v.x2, v.x3);
    return buf;
}

}  // namespace slantsurf
