#include "coinopt/chain.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "coinopt/analytic.hpp"
#include "coinopt/implied_vol.hpp"

namespace coinopt {

namespace {

constexpr std::array<const char*, 12> kMonths = {"JAN", "FEB", "MAR", "APR", "MAY", "JUN",
                                                 "JUL", "AUG", "SEP", "OCT", "NOV", "DEC"};

/// Shortest decimal form that round-trips to the same double.
std::string shortest(double v) {
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return {buf.data(), end};
}

std::string digits17(double v) {
    std::array<char, 40> buf{};
    int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return {buf.data(), static_cast<std::size_t>(n)};
}

double parse_number(const std::string& s, const char* what) {
    double v{};
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw std::invalid_argument(std::string("bad ") + what + ": '" + s + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string InstrumentName::str() const {
    const auto d = static_cast<unsigned>(expiry.day());
    const auto m = static_cast<unsigned>(expiry.month());
    const auto y = static_cast<int>(expiry.year()) % 100;
    std::ostringstream os;
    os << asset.code << '-' << d << kMonths[m - 1] << (y < 10 ? "0" : "") << y << '-'
       << shortest(strike) << '-' << (side == OptionSide::Call ? 'C' : 'P');
    return os.str();
}

InstrumentName parse_instrument(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == '-') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4)
        throw std::invalid_argument("instrument '" + text + "': expected 4 dash-separated tokens");

    InstrumentName name;
    if (parts[0].empty())
        throw std::invalid_argument("instrument '" + text + "': empty asset token");
    for (char& c : parts[0]) {
        if (!std::isalnum(static_cast<unsigned char>(c)))
            throw std::invalid_argument("instrument '" + text + "': bad asset token '" + parts[0] +
                                        "'");
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    name.asset = Currency{parts[0]};

    const std::string& d = parts[1];
    std::size_t nd = 0;
    while (nd < d.size() && std::isdigit(static_cast<unsigned char>(d[nd]))) ++nd;
    if ((nd != 1 && nd != 2) || d.size() != nd + 5)
        throw std::invalid_argument("instrument '" + text + "': bad date token '" + d + "'");
    const unsigned day = static_cast<unsigned>(std::stoi(d.substr(0, nd)));
    std::string mon = d.substr(nd, 3);
    for (char& c : mon) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    unsigned month = 0;
    for (unsigned i = 0; i < 12; ++i)
        if (mon == kMonths[i]) month = i + 1;
    if (month == 0)
        throw std::invalid_argument("instrument '" + text + "': bad month token '" + mon + "'");
    const std::string yy = d.substr(nd + 3);
    if (!std::isdigit(static_cast<unsigned char>(yy[0])) ||
        !std::isdigit(static_cast<unsigned char>(yy[1])))
        throw std::invalid_argument("instrument '" + text + "': bad year token '" + yy + "'");
    const int year = 2000 + std::stoi(yy);
    name.expiry = std::chrono::year{year} / std::chrono::month{month} / std::chrono::day{day};
    if (!name.expiry.ok())
        throw std::invalid_argument("instrument '" + text + "': invalid calendar date '" + d + "'");

    name.strike = parse_number(parts[2], "strike token");
    if (!(name.strike > 0.0))
        throw std::invalid_argument("instrument '" + text + "': strike must be positive");

    if (parts[3] == "C" || parts[3] == "c")
        name.side = OptionSide::Call;
    else if (parts[3] == "P" || parts[3] == "p")
        name.side = OptionSide::Put;
    else
        throw std::invalid_argument("instrument '" + text + "': bad side token '" + parts[3] +
                                    "' (want C or P)");
    return name;
}

std::vector<ChainRow> load_chain(std::istream& in, bool lenient,
                                 std::vector<std::string>* warnings) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty chain file, header expected");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "instrument,class,spot,vol,rate,quanto_fix,observed_price")
        throw std::invalid_argument("bad chain header: '" + line + "'");

    std::vector<ChainRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        try {
            auto f = split_csv(line);
            if (f.size() != 7)
                throw std::invalid_argument("expected 7 fields, got " + std::to_string(f.size()));
            ChainRow row;
            row.line = lineno;
            row.instrument = parse_instrument(f[0]);
            row.product = parse_product_class(f[1]);
            row.spot = parse_number(f[2], "spot");
            row.vol = parse_number(f[3], "vol");
            row.rate = parse_number(f[4], "rate");
            if (!f[5].empty()) row.quanto_fix = parse_number(f[5], "quanto_fix");
            if (!f[6].empty()) row.observed_price = parse_number(f[6], "observed_price");
            if (!(row.spot > 0.0)) throw std::invalid_argument("spot must be positive");
            if (!(row.vol > 0.0)) throw std::invalid_argument("vol must be positive");
            if (is_quanto(row.product)) {
                if (!row.quanto_fix) throw std::invalid_argument("missing quanto fix");
                if (!(*row.quanto_fix > 0.0))
                    throw std::invalid_argument("quanto fix must be positive");
            } else if (row.quanto_fix) {
                throw std::invalid_argument("quanto fix given for non-quanto class");
            }
            rows.push_back(std::move(row));
        } catch (const std::exception& e) {
            const std::string msg = "line " + std::to_string(lineno) + ": " + e.what();
            if (!lenient) throw std::invalid_argument(msg);
            if (warnings) warnings->push_back(msg);
        }
    }
    return rows;
}

PricedRow price_row(const ChainRow& row, std::chrono::sys_seconds asof) {
    const auto expiry_ts =
        std::chrono::sys_seconds{std::chrono::sys_days{row.instrument.expiry}};
    const double tau =
        std::chrono::duration<double>(expiry_ts - asof).count() / (365.0 * 86400.0);
    if (!(tau > 0.0))
        throw std::invalid_argument("instrument " + row.instrument.str() +
                                    " is expired at the valuation time");

    const OptionSide side = row.instrument.side;
    const double S = row.spot, K = row.instrument.strike, r = row.rate, v = row.vol;

    PricedRow out;
    out.instrument = row.instrument.str();
    out.greeks = greeks_for(row.product, side, S, K, row.quanto_fix, r, 0.0, v, tau);
    if (row.observed_price) {
        out.implied_vol = implied_vol(row.product, side, *row.observed_price, S, K,
                                      row.quanto_fix, r, 0.0, tau)
                              .sigma;
    }
    return out;
}

std::vector<PricedRow> price_chain(const std::vector<ChainRow>& rows,
                                   std::chrono::sys_seconds asof) {
    std::vector<PricedRow> out;
    out.reserve(rows.size());
    for (const auto& row : rows) out.push_back(price_row(row, asof));
    return out;
}

void emit_priced_chain(const std::vector<PricedRow>& rows, std::ostream& out) {
    out << "instrument,price,delta,gamma,vega,volga,vanna,theta,implied_vol\n";
    for (const auto& r : rows) {
        out << r.instrument << ',' << digits17(r.greeks.price) << ',' << digits17(r.greeks.delta)
            << ',' << digits17(r.greeks.gamma) << ',' << digits17(r.greeks.vega) << ','
            << digits17(r.greeks.volga) << ',' << digits17(r.greeks.vanna) << ','
            << digits17(r.greeks.theta) << ',';
        if (r.implied_vol) out << digits17(*r.implied_vol);
        out << '\n';
    }
    if (!out) throw std::runtime_error("chain output stream failed");
}

std::vector<PricedRow> load_priced_chain(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty file, header expected");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "instrument,price,delta,gamma,vega,volga,vanna,theta,implied_vol")
        throw std::invalid_argument("bad priced-chain header: '" + line + "'");
    std::vector<PricedRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto f = split_csv(line);
        if (f.size() != 9)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 9 fields");
        PricedRow r;
        r.instrument = parse_instrument(f[0]).str();
        r.greeks.price = parse_number(f[1], "price");
        r.greeks.delta = parse_number(f[2], "delta");
        r.greeks.gamma = parse_number(f[3], "gamma");
        r.greeks.vega = parse_number(f[4], "vega");
        r.greeks.volga = parse_number(f[5], "volga");
        r.greeks.vanna = parse_number(f[6], "vanna");
        r.greeks.theta = parse_number(f[7], "theta");
        if (!f[8].empty()) r.implied_vol = parse_number(f[8], "implied_vol");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::chrono::sys_seconds parse_timestamp(const std::string& text) {
    int y{}, mo{}, d{}, h{}, mi{}, s{};
    char tail{};
    if (std::sscanf(text.c_str(), "%d-%d-%dT%d:%d:%d%c", &y, &mo, &d, &h, &mi, &s, &tail) == 7 &&
        tail == 'Z') {
        // fall through to validation below
    } else if (std::sscanf(text.c_str(), "%d-%d-%d", &y, &mo, &d) == 3 &&
               text.size() == 10) {
        h = mi = s = 0;
    } else {
        throw std::invalid_argument("bad timestamp '" + text +
                                    "' (want YYYY-MM-DD or YYYY-MM-DDTHH:MM:SSZ)");
    }
    const auto ymd = std::chrono::year{y} / std::chrono::month{static_cast<unsigned>(mo)} /
                     std::chrono::day{static_cast<unsigned>(d)};
    if (!ymd.ok() || h < 0 || h > 23 || mi < 0 || mi > 59 || s < 0 || s > 60)
        throw std::invalid_argument("bad timestamp '" + text + "'");
    return std::chrono::sys_seconds{std::chrono::sys_days{ymd}} + std::chrono::hours{h} +
           std::chrono::minutes{mi} + std::chrono::seconds{s};
}

}  // namespace coinopt
