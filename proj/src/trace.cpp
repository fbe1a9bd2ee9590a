#include "cafesim/trace.hpp"

#include <cstdio>
#include <ostream>

namespace cafesim {

void SimTrace::reserve_rows(std::size_t rows) {
  time.reserve(rows);
  drive_speed.reserve(rows);
  const auto n = static_cast<std::size_t>(cafe_count);
  x.reserve(rows * n);
  z.reserve(rows * n);
  z_dot.reserve(rows * n);
  clamp.reserve(rows * n);
  slip.reserve(rows * n);
  tension.reserve(rows * static_cast<std::size_t>(segment_count));
}

void write_trace_csv(const SimTrace& trace, std::ostream& out) {
  out << "time_s,drive_speed_m_s";
  for (int i = 0; i < trace.cafe_count; ++i)
    out << ",cafe" << i << "_x_m,cafe" << i << "_z_m,cafe" << i << "_zdot_m_s,cafe" << i
        << "_clamp,cafe" << i << "_slip";
  for (int s = 0; s < trace.segment_count; ++s) out << ",seg" << s << "_tension_n";
  out << "\n";

  char buf[64];
  const auto put_first = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.9g", v);
    out << buf;
  };
  const auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.9g", v);
    out << buf;
  };

  const auto n = static_cast<std::size_t>(trace.cafe_count);
  const auto m = static_cast<std::size_t>(trace.segment_count);
  for (std::size_t row = 0; row < trace.row_count(); ++row) {
    put_first(trace.time[row]);
    put(trace.drive_speed[row]);
    for (std::size_t i = 0; i < n; ++i) {
      put(trace.x[row * n + i]);
      put(trace.z[row * n + i]);
      put(trace.z_dot[row * n + i]);
      out << ',' << clamp_label(trace.clamp[row * n + i]);
      out << ',' << (trace.slip[row * n + i] ? 1 : 0);
    }
    for (std::size_t s = 0; s < m; ++s) put(trace.tension[row * m + s]);
    out << "\n";
  }
}

}  // namespace cafesim
