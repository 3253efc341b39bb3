#ifndef BOSEGAS_COMMON_HPP
#define BOSEGAS_COMMON_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bosegas {

inline constexpr double pi = 3.14159265358979323846;

// Error taxonomy mapped to CLI exit codes: domain 2, solver/accuracy 3, resource 4.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct solver_error : std::runtime_error {
    explicit solver_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct accuracy_error : std::runtime_error {
    explicit accuracy_error(const std::string& msg) : std::runtime_error(msg) {}
};
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct Vec3 {
    double x = 0, y = 0, z = 0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double norm2() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm2()); }
};

// Worker count for shell-parallel sums and multi-chain runs. 0 = hardware.
void set_thread_count(unsigned n);
unsigned thread_count();

}  // namespace bosegas

#endif
