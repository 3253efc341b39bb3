#include "bosegas/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bosegas {

RadialPotential RadialPotential::hard_sphere(double radius) {
    if (!(radius > 0.0)) throw domain_error("hard_sphere: radius must be positive");
    RadialPotential p;
    p.kind_ = Kind::hard_sphere;
    p.support_ = radius;
    return p;
}

RadialPotential RadialPotential::soft_sphere(double height, double radius) {
    if (!(radius > 0.0)) throw domain_error("soft_sphere: radius must be positive");
    if (height < 0.0) throw domain_error("soft_sphere: repulsive potentials only");
    RadialPotential p;
    p.kind_ = Kind::soft_sphere;
    p.support_ = radius;
    p.height_ = height;
    return p;
}

RadialPotential RadialPotential::tabulated(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw domain_error("tabulated: need at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (samples[i].second < 0.0)
            throw domain_error("tabulated: negative value (repulsive potentials only)");
        if (samples[i].first < 0.0) throw domain_error("tabulated: negative radius");
        if (i > 0 && samples[i].first <= samples[i - 1].first)
            throw domain_error("tabulated: radii must be strictly increasing");
    }
    RadialPotential p;
    p.kind_ = Kind::tabulated;
    p.support_ = samples.back().first;
    p.table_ = std::move(samples);
    return p;
}

RadialPotential RadialPotential::zero() { return RadialPotential(); }

double RadialPotential::value(double r) const {
    switch (kind_) {
        case Kind::zero:
            return 0.0;
        case Kind::hard_sphere:
            throw domain_error("hard_sphere potential cannot be evaluated pointwise");
        case Kind::soft_sphere:
            return r < support_ ? height_ : 0.0;
        case Kind::tabulated: {
            if (r <= table_.front().first) return table_.front().second;
            if (r >= table_.back().first) return 0.0;  // zero beyond last sample
            auto it = std::upper_bound(table_.begin(), table_.end(), r,
                                       [](double v, const auto& s) { return v < s.first; });
            auto lo = *(it - 1);
            auto hi = *it;
            double t = (r - lo.first) / (hi.first - lo.first);
            return lo.second + t * (hi.second - lo.second);
        }
    }
    return 0.0;
}

double RadialPotential::hard_radius() const {
    if (kind_ != Kind::hard_sphere) throw domain_error("hard_radius: not a hard sphere");
    return support_;
}

double RadialPotential::soft_height() const {
    if (kind_ != Kind::soft_sphere) throw domain_error("soft_height: not a soft sphere");
    return height_;
}

std::vector<double> RadialPotential::breakpoints() const {
    switch (kind_) {
        case Kind::soft_sphere:
        case Kind::hard_sphere:
            return {support_};
        case Kind::tabulated: {
            std::vector<double> b;
            for (const auto& s : table_) b.push_back(s.first);
            return b;
        }
        default:
            return {};
    }
}

std::string RadialPotential::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::zero: os << "zero"; break;
        case Kind::hard_sphere: os << "hard:" << support_; break;
        case Kind::soft_sphere: os << "soft:" << height_ << "," << support_; break;
        case Kind::tabulated: os << "table[" << table_.size() << " pts, R=" << support_ << "]"; break;
    }
    return os.str();
}

namespace {

std::vector<std::pair<double, double>> read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw domain_error("table: cannot open '" + path + "'");
    std::vector<std::pair<double, double>> samples;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double r, v;
        if (ls >> r >> v) samples.emplace_back(r, v);
    }
    return samples;
}

}  // namespace

RadialPotential RadialPotential::parse(const std::string& spec) {
    if (spec == "zero") return zero();
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw domain_error("potential spec '" + spec + "': expected hard:<r>, soft:<h>,<r>, table:<path>, or zero");
    std::string head = spec.substr(0, colon), rest = spec.substr(colon + 1);
    try {
        if (head == "hard") return hard_sphere(std::stod(rest));
        if (head == "soft") {
            auto comma = rest.find(',');
            if (comma == std::string::npos)
                throw domain_error("soft potential spec: expected soft:<height>,<radius>");
            return soft_sphere(std::stod(rest.substr(0, comma)), std::stod(rest.substr(comma + 1)));
        }
        if (head == "table") return tabulated(read_table(rest));
    } catch (const std::invalid_argument&) {
        throw domain_error("potential spec '" + spec + "': malformed number");
    }
    throw domain_error("potential spec '" + spec + "': unknown kind '" + head + "'");
}

}  // namespace bosegas
