#include "timeop/table.hpp"

#include "timeop/forms.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace timeop {

std::string fmt_double(double v, int precision) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

std::string fmt_rat(const BigRat& q) { return rat_to_string(q); }

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns.size())
    throw std::invalid_argument("Table: row width does not match the header");
  rows.push_back(std::move(cells));
}

namespace {

// quote only when the cell would break the column structure
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

}  // namespace

std::string Table::to_csv() const {
  std::ostringstream out;
  out << "# schema: " << schema << "\n";
  for (size_t i = 0; i < columns.size(); ++i)
    out << csv_field(columns[i]) << (i + 1 < columns.size() ? "," : "");
  out << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i)
      out << csv_field(row[i]) << (i + 1 < row.size() ? "," : "");
    out << "\n";
  }
  return out.str();
}

std::string Table::to_json() const {
  nlohmann::json j;
  j["schema"] = schema;
  j["columns"] = columns;
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

std::string Table::render(const std::string& format) const {
  if (format == "csv") return to_csv();
  if (format == "json") return to_json();
  throw std::invalid_argument("Table: format must be csv or json");
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  unsigned hw = std::thread::hardware_concurrency();
  std::size_t workers = std::min<std::size_t>({n, hw == 0 ? 1 : hw, 8});
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

GaussVector random_band_vector(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nterms(2, 3);
  std::uniform_int_distribution<int> pow_d(0, 6);
  std::uniform_int_distribution<int> wnum(1, 9);
  std::uniform_int_distribution<int> cnum(-2, 2);
  std::uniform_int_distribution<int> cden(1, 3);
  GaussVector v;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    BigRat w(wnum(rng), 10);
    BigRat cr(cnum(rng), cden(rng));
    BigRat ci(cnum(rng), cden(rng));
    if (cr == 0 && ci == 0) cr = 1;
    v.add_term(ExactScalar(cr, ci), pow_d(rng), ExactScalar(0, w));
  }
  return v;
}

std::pair<GaussVector, GaussVector> random_overlapping_pair(
    std::mt19937_64& rng) {
  for (;;) {
    GaussVector a = random_band_vector(rng);
    GaussVector b = random_band_vector(rng);
    if (std::abs(inner_product(to_float(a), to_float(b))) > 1e-2)
      return {std::move(a), std::move(b)};
  }
}

std::pair<GaussVector, GaussVector> random_sweep_pair(std::mt19937_64& rng) {
  for (;;) {
    GaussVector a = random_band_vector(rng);
    GaussVector b = random_band_vector(rng);
    const GaussVectorF af = to_float(a), bf = to_float(b);
    // parity can kill the whole sweep; redraw until the gap is alive
    if (std::abs(t_eps_form_numeric(af, bf, 0.25) - t_ab_form_numeric(af, bf)) >
        1e-6)
      return {std::move(a), std::move(b)};
  }
}

GaussVector random_frame_vector(const HermiteFrame& frame, long max_index,
                                std::mt19937_64& rng) {
  if (max_index > frame.order())
    throw std::invalid_argument("random_frame_vector: index beyond the frame");
  std::uniform_int_distribution<int> nterms(2, 4);
  std::uniform_int_distribution<long> idx(0, max_index);
  std::uniform_int_distribution<int> num(-3, 3);
  std::uniform_int_distribution<int> den(1, 3);
  GaussVector v;
  const int n = nterms(rng);
  for (int t = 0; t < n; ++t) {
    BigRat re(num(rng), den(rng));
    BigRat im(num(rng), den(rng));
    if (re == 0 && im == 0) re = 1;
    v += ExactScalar(re, im) * frame.vec(idx(rng));
  }
  return v;
}

}  // namespace timeop
