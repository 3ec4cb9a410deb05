#include "cobord/bands.hpp"

#include "cobord/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>
#include <sstream>

namespace cobord::bands {

namespace {

struct Vec2
{
    Rational x, y;
};

Rational cross2(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
Vec2 minus2(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }

int sign_of(const Rational& r) { return r > 0 ? 1 : (r < 0 ? -1 : 0); }

// Point q on the closed segment [a, b], all three collinear.
bool on_segment(const Vec2& a, const Vec2& b, const Vec2& q)
{
    return std::min(a.x, b.x) <= q.x && q.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= q.y &&
           q.y <= std::max(a.y, b.y);
}

Rational point_segment_distance2(const Vec3& q, const Vec3& a, const Vec3& b)
{
    const auto d = b - a;
    const auto dd = dot(d, d);
    Rational t = dd == 0 ? Rational(0) : dot(q - a, d) / dd;
    t = std::clamp(t, Rational(0), Rational(1));
    const auto diff = q - (a + t * d);
    return dot(diff, diff);
}

Rational rounded(double v) { return Rational(static_cast<long long>(std::llround(v * 4096.0)), 4096); }

Rational parse_rational(const std::string& token, std::size_t lineno)
{
    static const std::regex form(R"(([+-]?[0-9]+)(/([0-9]+))?)");
    std::smatch m;
    if (!std::regex_match(token, m, form))
        throw ParseError(lineno, "'" + token + "' is not an integer or num/den rational");
    const boost::multiprecision::cpp_int num(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str());
    if (!m[3].matched)
        return Rational(num);
    const boost::multiprecision::cpp_int den(m[3].str());
    if (den == 0)
        throw ParseError(lineno, "zero denominator in '" + token + "'");
    return Rational(num, den);
}

std::string rational_text(const Rational& r)
{
    std::ostringstream out;
    out << r;
    return out.str();
}

} // namespace

Rational parse_rational(const std::string& token)
{
    try {
        return parse_rational(token, 0);
    } catch (const ParseError& e) {
        throw Error(e.what());
    }
}

Rational dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b)
{
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

bool is_zero(const Vec3& a) { return a.x == 0 && a.y == 0 && a.z == 0; }

// ---------------------------------------------------------------------------
// rotations

Rotation Rotation::identity()
{
    Rotation r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m[i][j] = i == j ? 1 : 0;
    return r;
}

Rotation Rotation::from_quaternion(long a, long b, long c, long d)
{
    const Rational n = Rational(a * a + b * b + c * c + d * d);
    if (n == 0)
        throw Error("zero quaternion");
    Rotation r;
    r.m[0] = {Rational(a * a + b * b - c * c - d * d) / n, Rational(2 * (b * c - a * d)) / n,
              Rational(2 * (b * d + a * c)) / n};
    r.m[1] = {Rational(2 * (b * c + a * d)) / n, Rational(a * a - b * b + c * c - d * d) / n,
              Rational(2 * (c * d - a * b)) / n};
    r.m[2] = {Rational(2 * (b * d - a * c)) / n, Rational(2 * (c * d + a * b)) / n,
              Rational(a * a - b * b - c * c + d * d) / n};
    return r;
}

Vec3 Rotation::apply(const Vec3& v) const
{
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z, m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

const std::vector<Rotation>& retry_schedule()
{
    static const std::vector<Rotation> schedule = [] {
        std::vector<Rotation> s{Rotation::identity()};
        const long q[][4] = {{7, 1, 2, 3},  {9, 2, 1, 4},  {11, 3, 5, 1}, {13, 4, 1, 6}, {8, 5, 3, 2},
                             {12, 1, 6, 5}, {10, 7, 2, 3}, {15, 2, 7, 4}, {6, 5, 4, 1}, {17, 3, 8, 5},
                             {14, 9, 1, 2}, {19, 4, 3, 9}, {5, 6, 7, 8}, {16, 11, 2, 7}, {21, 5, 9, 3}};
        for (const auto& r : q)
            s.push_back(Rotation::from_quaternion(r[0], r[1], r[2], r[3]));
        return s;
    }();
    return schedule;
}

// ---------------------------------------------------------------------------
// exact segment geometry

bool segments_intersect(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1)
{
    auto apart = [](const Rational& a0, const Rational& a1, const Rational& b0, const Rational& b1) {
        return std::max(a0, a1) < std::min(b0, b1) || std::max(b0, b1) < std::min(a0, a1);
    };
    if (apart(p0.x, p1.x, q0.x, q1.x) || apart(p0.y, p1.y, q0.y, q1.y) || apart(p0.z, p1.z, q0.z, q1.z))
        return false;
    const auto d1 = p1 - p0;
    const auto d2 = q1 - q0;
    const auto r = q0 - p0;
    const auto n = cross(d1, d2);
    if (dot(r, n) != 0)
        return false; // not coplanar
    if (!is_zero(n)) {
        const auto nn = dot(n, n);
        const Rational s = dot(cross(r, d2), n) / nn;
        const Rational t = dot(cross(r, d1), n) / nn;
        return s >= 0 && s <= 1 && t >= 0 && t <= 1;
    }
    if (is_zero(d1))
        return point_segment_distance2(p0, q0, q1) == 0;
    if (!is_zero(cross(r, d1)))
        return false; // parallel, distinct lines
    const auto dd = dot(d1, d1);
    const Rational a = dot(q0 - p0, d1) / dd;
    const Rational b = dot(q1 - p0, d1) / dd;
    return std::max(std::min(a, b), Rational(0)) <= std::min(std::max(a, b), Rational(1));
}

Rational segment_distance2(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1)
{
    Rational best = std::min({point_segment_distance2(p0, q0, q1), point_segment_distance2(p1, q0, q1),
                              point_segment_distance2(q0, p0, p1), point_segment_distance2(q1, p0, p1)});
    const auto d1 = p1 - p0;
    const auto d2 = q1 - q0;
    const auto r = p0 - q0;
    const auto a = dot(d1, d1);
    const auto b = dot(d1, d2);
    const auto c = dot(d2, d2);
    const auto det = a * c - b * b;
    if (det != 0) {
        const auto e = dot(d1, r);
        const auto f = dot(d2, r);
        const Rational s = (b * f - c * e) / det;
        const Rational t = (a * f - b * e) / det;
        if (s >= 0 && s <= 1 && t >= 0 && t <= 1) {
            const auto diff = (p0 + s * d1) - (q0 + t * d2);
            best = std::min(best, dot(diff, diff));
        }
    }
    return best;
}

bool curve_embedded(const Curve& c)
{
    const std::size_t n = c.size();
    if (n < 3)
        return false;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& a = c[i];
        const auto& b = c[(i + 1) % n];
        if (a == b)
            return false;
        const auto& next = c[(i + 2) % n];
        const auto d1 = b - a;
        const auto d2 = next - b;
        if (is_zero(cross(d1, d2)) && dot(d1, d2) < 0)
            return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1)
                continue; // adjacent through the closing edge
            if (segments_intersect(c[i], c[(i + 1) % n], c[j], c[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

bool curves_disjoint(const Curve& a, const Curve& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (segments_intersect(a[i], a[(i + 1) % a.size()], b[j], b[(j + 1) % b.size()]))
                return false;
    return true;
}

// ---------------------------------------------------------------------------
// linking numbers

namespace {

std::optional<long> projected_linking(const Curve& a, const Curve& b, const Rotation& r)
{
    auto rotate = [&](const Curve& c) {
        std::vector<Vec3> out;
        out.reserve(c.size());
        for (const auto& v : c)
            out.push_back(r.apply(v));
        return out;
    };
    const auto ra = rotate(a);
    const auto rb = rotate(b);
    long total = 0;
    for (std::size_t i = 0; i < ra.size(); ++i) {
        const auto& a0 = ra[i];
        const auto& a1 = ra[(i + 1) % ra.size()];
        const Vec2 p0{a0.x, a0.y}, p1{a1.x, a1.y};
        const auto da = minus2(p1, p0);
        for (std::size_t j = 0; j < rb.size(); ++j) {
            const auto& b0 = rb[j];
            const auto& b1 = rb[(j + 1) % rb.size()];
            const Vec2 q0{b0.x, b0.y}, q1{b1.x, b1.y};
            const auto db = minus2(q1, q0);
            const int o1 = sign_of(cross2(da, minus2(q0, p0)));
            const int o2 = sign_of(cross2(da, minus2(q1, p0)));
            const int o3 = sign_of(cross2(db, minus2(p0, q0)));
            const int o4 = sign_of(cross2(db, minus2(p1, q0)));
            // a vertex on the other projected edge, or overlapping edges
            if ((o1 == 0 && on_segment(p0, p1, q0)) || (o2 == 0 && on_segment(p0, p1, q1)) ||
                (o3 == 0 && on_segment(q0, q1, p0)) || (o4 == 0 && on_segment(q0, q1, p1)))
                return std::nullopt;
            if (o1 * o2 >= 0 || o3 * o4 >= 0)
                continue;
            const Rational denom = cross2(da, db);
            const Rational s = cross2(minus2(q0, p0), db) / denom;
            const Rational t = cross2(minus2(q0, p0), da) / denom;
            const Rational za = a0.z + s * (a1.z - a0.z);
            const Rational zb = b0.z + t * (b1.z - b0.z);
            if (za == zb)
                return std::nullopt;
            const int sign = za > zb ? sign_of(cross2(da, db)) : sign_of(cross2(db, da));
            total += sign;
        }
    }
    if (total % 2 != 0)
        throw Error("odd crossing sum; curves are not closed polygons");
    return total / 2;
}

void require_disjoint(const Curve& a, const Curve& b)
{
    if (a.size() < 2 || b.size() < 2)
        throw Error("a closed curve needs at least two vertices");
    if (!curves_disjoint(a, b))
        throw Error("curves intersect; linking number undefined");
}

} // namespace

std::optional<long> linking_number_in(const Curve& a, const Curve& b, const Rotation& r)
{
    require_disjoint(a, b);
    return projected_linking(a, b, r);
}

long linking_number(const Curve& a, const Curve& b)
{
    require_disjoint(a, b);
    for (const auto& r : retry_schedule())
        if (auto lk = projected_linking(a, b, r))
            return *lk;
    throw Error("no generic projection found in the retry schedule");
}

// ---------------------------------------------------------------------------
// framed knots

void validate(const FramedPLKnot& k)
{
    const std::size_t n = k.points.size();
    if (n < 3)
        throw Error("a framed knot needs at least 3 vertices");
    if (k.framing.size() != n)
        throw Error("expected one framing vector per vertex");
    if (k.return_sign != 1 && k.return_sign != -1)
        throw Error("return_sign must be +1 or -1");
    if (!curve_embedded(k.points))
        throw Error("the core polygon is not embedded");
    for (std::size_t i = 0; i < n; ++i) {
        const auto& f0 = k.framing[i];
        const auto f1 = i + 1 == n ? Rational(k.return_sign) * k.framing[0] : k.framing[i + 1];
        const auto d = k.points[(i + 1) % n] - k.points[i];
        const auto c0 = cross(f0, d);
        const auto c1 = cross(f1, d);
        // (1-t) c0 + t c1 vanishes for some t in [0,1] iff an endpoint vanishes
        // or the two are opposite multiples of each other
        if (is_zero(c0) || is_zero(c1) || (is_zero(cross(c0, c1)) && dot(c0, c1) < 0))
            throw Error("framing is tangent to the edge from vertex " + std::to_string(i));
    }
}

namespace {

std::vector<Curve> offsets(const FramedPLKnot& k, const Rational& eps)
{
    if (eps <= 0)
        throw Error("offset must be positive");
    Curve plus, minus;
    for (std::size_t i = 0; i < k.points.size(); ++i) {
        plus.push_back(k.points[i] + eps * k.framing[i]);
        minus.push_back(k.points[i] - eps * k.framing[i]);
    }
    std::vector<Curve> out;
    if (k.return_sign == 1) {
        out = {plus, minus};
    } else {
        plus.insert(plus.end(), minus.begin(), minus.end());
        out = {plus};
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!curve_embedded(out[i]))
            throw Error("offset " + rational_text(eps) + " is too large: a boundary curve self-intersects");
        if (!curves_disjoint(out[i], k.points))
            throw Error("offset " + rational_text(eps) + " is too large: a boundary curve meets the core");
        for (std::size_t j = 0; j < i; ++j)
            if (!curves_disjoint(out[i], out[j]))
                throw Error("offset " + rational_text(eps) + " is too large: boundary curves meet");
    }
    return out;
}

} // namespace

std::vector<Curve> boundary_curves(const FramedPLKnot& k, const Rational& eps)
{
    validate(k);
    return offsets(k, eps);
}

namespace {

std::pair<Rational, std::vector<Curve>> default_offsets(const FramedPLKnot& k)
{
    validate(k);
    const std::size_t n = k.points.size();
    Rational feature2 = -1;
    auto consider = [&](const Rational& d2) {
        if (feature2 < 0 || d2 < feature2)
            feature2 = d2;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto e = k.points[(i + 1) % n] - k.points[i];
        consider(dot(e, e));
        for (std::size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1)
                continue;
            consider(segment_distance2(k.points[i], k.points[(i + 1) % n], k.points[j], k.points[(j + 1) % n]));
        }
    }
    Rational frame2 = 0;
    for (const auto& f : k.framing)
        frame2 = std::max(frame2, dot(f, f));
    // eps^2 * |f|^2 <= feature^2 / 4
    Rational eps = 1;
    while (eps * eps * frame2 * 4 > feature2)
        eps /= 2;
    for (int attempt = 0; attempt < 64; ++attempt, eps /= 2) {
        try {
            auto curves = offsets(k, eps);
            return {eps, std::move(curves)};
        } catch (const Error&) {
        }
    }
    throw Error("no embedded offset found");
}

} // namespace

Rational default_epsilon(const FramedPLKnot& k) { return default_offsets(k).first; }

std::vector<Curve> boundary_curves(const FramedPLKnot& k) { return default_offsets(k).second; }

long half_twists(const FramedPLKnot& k)
{
    long total = 0;
    for (const auto& c : boundary_curves(k))
        total += linking_number(k.points, c);
    return total;
}

int half_twists_mod4(const FramedPLKnot& k) { return static_cast<int>(((half_twists(k) % 4) + 4) % 4); }

bool is_mobius(const FramedPLKnot& k) { return k.return_sign == -1; }

FramedPLKnot mirror(const FramedPLKnot& k)
{
    FramedPLKnot out = k;
    for (auto& p : out.points)
        p.z = -p.z;
    for (auto& f : out.framing)
        f.z = -f.z;
    return out;
}

FramedPLKnot twisted_circle(int half_twists, int vertices)
{
    const int n = vertices > 0 ? vertices : std::max(16, 4 * std::abs(half_twists) + 4);
    if (n < 3)
        throw Error("a circle needs at least 3 vertices");
    FramedPLKnot k;
    k.return_sign = half_twists % 2 == 0 ? 1 : -1;
    for (int j = 0; j < n; ++j) {
        const double theta = 2 * std::numbers::pi * j / n;
        const double phi = std::numbers::pi * half_twists * j / n;
        const double c = std::cos(theta), s = std::sin(theta);
        k.points.push_back({rounded(c), rounded(s), 0});
        // turning from the radial direction towards -z is right-handed about
        // the counterclockwise tangent
        k.framing.push_back({rounded(std::cos(phi) * c), rounded(std::cos(phi) * s), rounded(-std::sin(phi))});
    }
    return k;
}

FramedPLKnot parse_knot(std::istream& in)
{
    FramedPLKnot k;
    bool have_sign = false;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::istringstream tokens(line);
        std::vector<std::string> words;
        for (std::string w; tokens >> w;)
            words.push_back(w);
        if (words.empty())
            continue;
        if (!have_sign) {
            if (words.size() != 2 || words[0] != "return_sign" || (words[1] != "+1" && words[1] != "1" && words[1] != "-1"))
                throw ParseError(lineno, "expected 'return_sign +1' or 'return_sign -1'");
            k.return_sign = words[1] == "-1" ? -1 : 1;
            have_sign = true;
            continue;
        }
        if (words.size() != 8 || words[0] != "p" || words[4] != "f")
            throw ParseError(lineno, "expected 'p x y z f fx fy fz'");
        k.points.push_back({parse_rational(words[1], lineno), parse_rational(words[2], lineno),
                            parse_rational(words[3], lineno)});
        k.framing.push_back({parse_rational(words[5], lineno), parse_rational(words[6], lineno),
                             parse_rational(words[7], lineno)});
    }
    if (!have_sign)
        throw ParseError(lineno, "missing 'return_sign' line");
    return k;
}

FramedPLKnot parse_knot(const std::string& text)
{
    std::istringstream in(text);
    return parse_knot(in);
}

std::string to_text(const FramedPLKnot& k)
{
    std::ostringstream out;
    out << "return_sign " << (k.return_sign == 1 ? "+1" : "-1") << "\n";
    for (std::size_t i = 0; i < k.points.size(); ++i) {
        const auto& p = k.points[i];
        const auto& f = k.framing[i];
        out << "p " << p.x << " " << p.y << " " << p.z << " f " << f.x << " " << f.y << " " << f.z << "\n";
    }
    return out.str();
}

} // namespace cobord::bands
