#include "systole/quatalg.hpp"

#include <algorithm>
#include <cctype>

namespace systole::quatalg {

using arith::kronecker;
using quadfield::splitting_type;

QAlgK make_kalg(const QuadField& field, std::vector<PrimeIdeal> ram) {
    if (!field.imaginary()) throw DomainError("QAlgK needs an imaginary quadratic field");
    std::sort(ram.begin(), ram.end());
    if (std::adjacent_find(ram.begin(), ram.end()) != ram.end())
        throw DomainError("repeated ideal in ramification set");
    return QAlgK{field, std::move(ram)};
}

QAlgK split_pair_algebra(const QuadField& field, const std::vector<Int>& split_primes) {
    std::vector<PrimeIdeal> ram;
    for (const Int& p : split_primes) {
        if (splitting_type(p, field) != SplitType::Split)
            throw DomainError("prime " + p.get_str() + " is not split in the field");
        ram.push_back({p, IdealTag::First});
        ram.push_back({p, IdealTag::Second});
    }
    return make_kalg(field, std::move(ram));
}

Int ideal_norm(const PrimeIdeal& ideal, const QuadField& field) {
    return splitting_type(ideal.p, field) == SplitType::Inert ? Int(ideal.p * ideal.p) : ideal.p;
}

bool entries_valid(const QAlgK& alg) {
    for (const auto& ideal : alg.ram_f) {
        if (!arith::is_prime(ideal.p)) return false;
        bool split = splitting_type(ideal.p, alg.field) == SplitType::Split;
        bool unique = ideal.tag == IdealTag::Unique;
        if (split == unique) return false;
    }
    return true;
}

bool is_admissible(const QAlgQ& alg) {
    for (const Int& p : alg.ram_f)
        if (!arith::is_prime(p)) return false;
    return (alg.ram_f.size() + (alg.ram_inf ? 1 : 0)) % 2 == 0;
}

bool is_admissible(const QAlgK& alg) {
    if (!entries_valid(alg)) return false;
    return alg.ram_f.size() % 2 == 0;
}

unsigned type_number(const QAlgQ& alg) {
    if (!is_admissible(alg)) throw DomainError("type_number of inadmissible algebra");
    // the narrow class field of Q is Q itself
    return 1;
}

namespace {

// F2 rank by Gaussian elimination on bit masks.
unsigned f2_rank(std::vector<std::uint64_t> rows) {
    unsigned rank = 0;
    for (int bit = 63; bit >= 0; --bit) {
        std::uint64_t mask = 1ull << bit;
        auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                                  [&](std::uint64_t r) { return r & mask; });
        if (pivot == rows.end()) continue;
        std::swap(rows[rank], *pivot);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && (rows[i] & mask)) rows[i] ^= rows[rank];
        ++rank;
    }
    return rank;
}

std::uint64_t vector_to_mask(const std::vector<int>& v) {
    std::uint64_t m = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] == -1) m |= 1ull << i;
    return m;
}

} // namespace

std::uint64_t type_number_k(const QAlgK& alg) {
    if (!is_admissible(alg)) throw DomainError("type_number_k of inadmissible algebra");
    auto cg = quadfield::class_group(alg.field);
    std::vector<std::uint64_t> rows;
    std::set<Int> seen;
    for (const auto& ideal : alg.ram_f) {
        if (!seen.insert(ideal.p).second) continue; // conjugates share a class in Cl/Cl^2
        switch (splitting_type(ideal.p, alg.field)) {
            case SplitType::Split:
                rows.push_back(vector_to_mask(genus_character_vector(alg.field, ideal.p)));
                break;
            case SplitType::Ramified:
                rows.push_back(vector_to_mask(ramified_genus_vector(alg.field, ideal.p)));
                break;
            case SplitType::Inert:
                break; // (p) is principal: trivial class
        }
    }
    unsigned rho = f2_rank(std::move(rows));
    return 1ull << (cg.two_rank - std::min<unsigned>(rho, cg.two_rank));
}

bool is_square_in_qp(const Int& x, const Int& p) {
    if (x == 0) throw DomainError("square test needs x != 0");
    Int u = x;
    unsigned v = 0;
    while (u % p == 0) {
        u /= p;
        ++v;
    }
    if (v % 2 != 0) return false;
    if (p == 2) {
        Int r;
        mpz_mod_ui(r.get_mpz_t(), u.get_mpz_t(), 8);
        return r == 1;
    }
    return kronecker(u, p) == 1;
}

bool is_square_in_kp(const Int& x, const Int& p, const QuadField& field) {
    // k_p = Q_p when p splits; otherwise k_p = Q_p(sqrt(d)) and the rational
    // squares of k_p are exactly Q_p^2 union d*Q_p^2.
    if (splitting_type(p, field) == SplitType::Split) return is_square_in_qp(x, p);
    return is_square_in_qp(x, p) || is_square_in_qp(Int(x * field.squarefree_part()), p);
}

namespace {

bool square_in_field(const Int& x, const QuadField& field) {
    // x = (a + b sqrt(d))^2 rational forces ab = 0, so the rational squares
    // of k are Q^2 union d*Q^2; for integer x the latter is "x*d a square".
    if (x > 0 && arith::is_square(x)) return true;
    Int xd = x * field.squarefree_part();
    return xd > 0 && arith::is_square(xd);
}

} // namespace

bool embeds_quadratic(const QAlgK& alg, const Int& x) {
    if (x == 0) throw NotQuadratic("x = 0");
    if (square_in_field(x, alg.field))
        throw NotQuadratic(x.get_str() + " is already a square in the field");
    for (const auto& ideal : alg.ram_f)
        if (is_square_in_kp(x, ideal.p, alg.field)) return false;
    return true;
}

bool torsion_free_certificate(const QAlgK& alg) {
    if (!is_admissible(alg)) throw DomainError("certificate needs an admissible algebra");
    const Int& D = alg.field.discriminant();
    if (D == -4 || D == -3)
        throw FieldExcluded("certificate is inconclusive over Q(i) and Q(sqrt(-3))");
    return !embeds_quadratic(alg, -1) && !embeds_quadratic(alg, -3);
}

std::optional<std::vector<Int>> split_pair_base(const QAlgK& alg) {
    std::vector<Int> base;
    std::size_t i = 0;
    const auto& ram = alg.ram_f; // sorted
    while (i < ram.size()) {
        if (i + 1 < ram.size() && ram[i].p == ram[i + 1].p &&
            ram[i].tag == IdealTag::First && ram[i + 1].tag == IdealTag::Second) {
            base.push_back(ram[i].p);
            i += 2;
            continue;
        }
        return std::nullopt; // lone tagged ideal, or an inert/ramified entry
    }
    return base;
}

bool compatible(const QAlgQ& B, const QAlgK& A) {
    if (!is_admissible(B) || !is_admissible(A))
        throw DomainError("compatible expects admissible algebras");
    if (B.ram_inf) throw DomainError("compatible expects an indefinite B");
    auto base = split_pair_base(A);
    if (!base) return false;
    for (const Int& p : *base)
        if (!B.ram_f.count(p)) return false;
    for (const Int& q : B.ram_f) {
        if (std::find(base->begin(), base->end(), q) != base->end()) continue;
        if (splitting_type(q, A.field) == SplitType::Split) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Text grammar
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    char take() {
        skip_ws();
        if (pos >= text.size()) throw ParseError("unexpected end of input", pos + 1);
        return text[pos++];
    }
    void expect(char c) {
        std::size_t at = pos;
        if (take() != c)
            throw ParseError(std::string("expected '") + c + "'", at + 1);
    }
    Int integer() {
        skip_ws();
        std::size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        std::size_t digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            ++pos;
            ++digits;
        }
        if (digits == 0) throw ParseError("expected an integer", start + 1);
        return Int(std::string(text.substr(start, pos - start)));
    }
};

} // namespace

std::string to_string(const QAlgQ& alg) {
    std::string s = "Q{";
    bool first = true;
    for (const Int& p : alg.ram_f) {
        if (!first) s += ",";
        s += p.get_str();
        first = false;
    }
    return s + "}";
}

std::string to_string(const QAlgK& alg) {
    std::string s = "K[" + alg.field.discriminant().get_str() + "]{";
    bool first = true;
    for (const auto& ideal : alg.ram_f) {
        if (!first) s += ",";
        s += ideal.p.get_str();
        switch (ideal.tag) {
            case IdealTag::First: s += "+"; break;
            case IdealTag::Second: s += "-"; break;
            case IdealTag::Unique:
                s += splitting_type(ideal.p, alg.field) == SplitType::Ramified ? "r" : "i";
                break;
        }
        first = false;
    }
    return s + "}";
}

QAlgQ parse_qalg_q(std::string_view text) {
    Cursor c{text};
    c.expect('Q');
    c.expect('{');
    QAlgQ alg;
    if (c.peek() != '}') {
        while (true) {
            std::size_t at = c.pos;
            Int p = c.integer();
            if (!arith::is_prime(p)) throw ParseError(p.get_str() + " is not prime", at + 1);
            if (!alg.ram_f.insert(p).second)
                throw ParseError("repeated prime " + p.get_str(), at + 1);
            char n = c.take();
            if (n == '}') break;
            if (n != ',') throw ParseError("expected ',' or '}'", c.pos);
        }
    } else {
        c.expect('}');
    }
    if (!c.eof()) throw ParseError("trailing characters", c.pos + 1);
    return alg;
}

QAlgK parse_qalg_k(std::string_view text) {
    Cursor c{text};
    c.expect('K');
    c.expect('[');
    std::size_t field_at = c.pos;
    Int D = c.integer();
    QuadField field = QuadField::rationals();
    try {
        field = QuadField::from_d_or_discriminant(D);
    } catch (const DomainError& e) {
        throw ParseError(e.what(), field_at + 1);
    }
    if (!field.imaginary()) throw ParseError("field must be imaginary quadratic", field_at + 1);
    c.expect(']');
    c.expect('{');
    std::vector<PrimeIdeal> ram;
    if (c.peek() == '}') {
        c.expect('}');
    } else {
        while (true) {
            std::size_t at = c.pos;
            Int p = c.integer();
            if (!arith::is_prime(p)) throw ParseError(p.get_str() + " is not prime", at + 1);
            SplitType st = splitting_type(p, field);
            char n = c.take();
            bool bare = false;
            switch (n) {
                case '+':
                    if (st != SplitType::Split)
                        throw ParseError(p.get_str() + " is not split; '+' tag invalid", at + 1);
                    ram.push_back({p, IdealTag::First});
                    break;
                case '-':
                    if (st != SplitType::Split)
                        throw ParseError(p.get_str() + " is not split; '-' tag invalid", at + 1);
                    ram.push_back({p, IdealTag::Second});
                    break;
                case 'i':
                    if (st != SplitType::Inert)
                        throw ParseError(p.get_str() + " is not inert; 'i' tag invalid", at + 1);
                    ram.push_back({p, IdealTag::Unique});
                    break;
                case 'r':
                    if (st != SplitType::Ramified)
                        throw ParseError(p.get_str() + " is not ramified; 'r' tag invalid", at + 1);
                    ram.push_back({p, IdealTag::Unique});
                    break;
                default:
                    // bare prime: the whole fiber above p
                    if (st == SplitType::Split) {
                        ram.push_back({p, IdealTag::First});
                        ram.push_back({p, IdealTag::Second});
                    } else {
                        ram.push_back({p, IdealTag::Unique});
                    }
                    bare = true;
                    break;
            }
            char sep = bare ? n : c.take();
            if (sep == '}') break;
            if (sep != ',') throw ParseError("expected ',' or '}'", c.pos);
        }
    }
    if (!c.eof()) throw ParseError("trailing characters", c.pos + 1);
    try {
        return make_kalg(field, std::move(ram));
    } catch (const DomainError& e) {
        throw ParseError(e.what(), 1);
    }
}

} // namespace systole::quatalg
