#include "twocover/pfactor.hpp"
#include "twocover/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <numeric>

#define PF_TRACE(msg) do { if (std::getenv("PF_TRACE")) std::cerr << "[pf] " << msg << std::endl; } while (0)

namespace twocover {

namespace {

// root-recovery operations, recorded in application order on the piece
struct ChainOp {
    enum Kind { Shift, Scale } kind;
    UnramBase::Elt c;  // shift constant (over the base active at the time)
    int lambda = 0;    // scale exponent
    int base_f = 1;    // residue degree of the base the constant lives in
};

struct Piece {
    std::shared_ptr<const UnramBase> U;
    UnramBase::Poly h;  // monic; approximates a true factor of (transformed) g
    int prec;           // coefficients valid mod p^prec
    std::vector<ChainOp> chain;
};

// an element P / p^s of U[x]/(h)
struct FracElt {
    UnramBase::Poly num;
    int pden = 0;
};

struct Factorizer {
    Integer p;
    ZPoly g;
    int N;
    int depth_cap;
    std::map<int, std::shared_ptr<UnramBase>> bases;
    std::vector<CompletionWithRoot> out;

    std::shared_ptr<UnramBase> base(int f) {
        auto it = bases.find(f);
        if (it != bases.end()) return it->second;
        auto b = std::make_shared<UnramBase>(p, f, N);
        bases[f] = b;
        return b;
    }

    void run() {
        auto U1 = base(1);
        Piece root{U1, U1->from_zpoly(g), N, {}};
        process(std::move(root), false);
        long total = 0;
        for (const auto& c : out) total += c.field->degree();
        if (total != g.degree())
            throw PrecisionExhausted("completion degrees do not sum to deg g");
    }

    static UnramBase::Poly pow_mod(const UnramBase& U, UnramBase::Poly b, long e,
                                   const UnramBase::Poly& m) {
        UnramBase::Poly r = U.pone();
        while (e > 0) {
            if (e & 1) r = U.pdivmod(U.pmul(r, b), m).second;
            b = U.pdivmod(U.pmul(b, b), m).second;
            e >>= 1;
        }
        return r;
    }

    // ------------------------------------------------------------------

    // When keep_first_only is set, the piece is the full preimage of a set of
    // Galois-conjugate factors and only the first block after the next split
    // represents a new completion.
    void process(Piece piece, bool keep_first_only) {
        for (int guard = 0; guard < 16 * g.degree() + 64; ++guard) {
            const UnramBase& U = *piece.U;
            const ResidueField& R = U.res();
            auto hbar = U.residue_poly(piece.h);
            if (R.pdeg(hbar) != U.pdeg(piece.h))
                throw PrecisionExhausted("piece lost monic residue");
            auto rf = R.pfactor(hbar);
            if (rf.empty()) throw Error("empty residue factorization");
            PF_TRACE("process deg=" << U.pdeg(piece.h) << " f=" << U.f() << " blocks=" << rf.size() << " m0=" << rf[0].second << " degphi0=" << R.pdeg(rf[0].first));
            if (rf.size() >= 2) {
                std::vector<ResidueField::Poly> blocks;
                for (auto& [fac, m] : rf) {
                    ResidueField::Poly b = R.pone();
                    for (int i = 0; i < m; ++i) b = R.pmul(b, fac);
                    blocks.push_back(b);
                }
                auto split = U.hensel_multi_split(piece.h, blocks);
                size_t upto = keep_first_only ? 1 : split.size();
                for (size_t i = 0; i < upto; ++i)
                    process(Piece{piece.U, split[i], piece.prec, piece.chain}, false);
                return;
            }
            auto [phibar, m] = rf[0];
            int f0 = R.pdeg(phibar);
            if (m == 1) {
                leaf_unramified(piece, phibar);
                return;
            }
            if (f0 > 1) {
                // residue degree grows: enlarge the base; the piece then
                // splits into f0 conjugate blocks of which we keep one
                piece = rebase(std::move(piece), f0);
                keep_first_only = true;
                continue;
            }
            // phibar = x - cbar with multiplicity m >= 2
            ResidueField::Elt cbar = R.neg(phibar[0]);
            if (!R.is_zero(cbar)) {
                UnramBase::Elt c = U.lift(cbar);
                piece.h = U.pshift(piece.h, c);
                piece.chain.push_back(ChainOp{ChainOp::Shift, c, 0, U.f()});
            }
            auto hull = U.newton_polygon(piece.h);
            int mdeg = U.pdeg(piece.h);
            if (hull.empty() || hull.back().first != mdeg)
                throw PrecisionExhausted("polygon missing leading vertex");
            if (hull.front().first != 0)
                throw PrecisionExhausted("polygon missing constant vertex");
            auto [i1, v1] = hull[hull.size() - 2];
            int da = v1, db = mdeg - i1;
            int gg = std::gcd(da, db);
            int a = da / gg, b = db / gg;
            if (hull.size() == 2 && b == mdeg) {
                leaf_totally_ramified(piece, a);
                return;
            }
            if (b == 1) {
                // integral minimal slope: rescale; the residue factorization
                // then separates the slope-a roots from the deeper ones
                piece.h = U.pscale_down(piece.h, a);
                piece.chain.push_back(ChainOp{ChainOp::Scale, {}, a, U.f()});
                continue;
            }
            refine(std::move(piece), a, b, keep_first_only);
            return;
        }
        throw PrecisionExhausted("piece processing did not terminate");
    }

    // move a piece to the unramified base extended by dext
    Piece rebase(Piece piece, int dext) {
        const UnramBase& U = *piece.U;
        auto U2 = base(U.f() * dext);
        UnramBase::Poly h2 = U2->embed_poly_from(U, piece.h);
        std::vector<ChainOp> chain2;
        for (auto& op : piece.chain) {
            ChainOp o = op;
            if (o.kind == ChainOp::Shift)
                o.c = U2->embed_from(*bases.at(o.base_f), o.c);
            o.base_f = U2->f();
            chain2.push_back(o);
        }
        return Piece{U2, h2, piece.prec, chain2};
    }

    // --------------------------------------------------------------- leaves

    void apply_chain_and_emit(const Piece& piece, std::shared_ptr<LocalField> K,
                              LocalField::Elt root_of_h) {
        LocalField::Elt r = std::move(root_of_h);
        for (size_t i = piece.chain.size(); i-- > 0;) {
            const ChainOp& op = piece.chain[i];
            if (op.kind == ChainOp::Scale) {
                // multiply by p^lambda on coordinates
                for (auto& c : r) c = K->U().mul_p(c, op.lambda);
            } else {
                UnramBase::Elt c = op.c;
                if (op.base_f != K->f())
                    c = K->U().embed_from(*bases.at(op.base_f), c);
                r = K->add(r, K->from_U(c));
            }
        }
        r = K->polish_root(g, r);
        out.push_back(CompletionWithRoot{std::move(K), std::move(r)});
    }

    void leaf_unramified(const Piece& piece, const ResidueField::Poly& phibar) {
        const UnramBase& U = *piece.U;
        int f0 = U.res().pdeg(phibar);
        std::shared_ptr<UnramBase> Ubig = (f0 == 1) ? base(U.f()) : base(U.f() * f0);
        UnramBase::Poly h2 = (f0 == 1) ? piece.h : Ubig->embed_poly_from(U, piece.h);
        auto roots = Ubig->res().proots(Ubig->residue_poly(h2));
        if (roots.empty()) throw Error("unramified leaf: no residue root");
        std::sort(roots.begin(), roots.end());
        UnramBase::Elt r0 = Ubig->hensel_root(h2, roots[0]);
        UnramBase::Poly E{Ubig->neg(Ubig->from_int(p)), Ubig->one()};
        auto K = std::make_shared<LocalField>(Ubig, E);
        Piece moved = piece;
        if (f0 > 1) moved = rebase(std::move(moved), f0);
        apply_chain_and_emit(moved, K, K->from_U(r0));
    }

    void leaf_totally_ramified(const Piece& piece, int a) {
        const UnramBase& U = *piece.U;
        int e = U.pdeg(piece.h);
        // pi = x^s * p^t with s a + t e = 1
        long s = 0;
        {
            long r0 = a, r1 = e, s0 = 1, s1 = 0;
            while (r1 != 0) {
                long q = r0 / r1;
                long r2 = r0 - q * r1, s2 = s0 - q * s1;
                r0 = r1; r1 = r2;
                s0 = s1; s1 = s2;
            }
            if (r0 != 1) throw Error("leaf: slope not reduced");
            s = ((s0 % e) + e) % e;
            if (s == 0) s = e;  // e == 1 never reaches here
        }
        long t = (1 - s * static_cast<long>(a)) / e;
        UnramBase::Poly zeta = pow_mod(U, U.pX(), s, piece.h);
        FracElt pi{zeta, static_cast<int>(-t)};
        if (pi.pden < 0) {
            for (auto& cc : pi.num) cc = U.mul_p(cc, -pi.pden);
            pi.pden = 0;
        }
        emit_ramified_leaf(piece, pi);
    }

    void emit_ramified_leaf(const Piece& piece, const FracElt& pi) {
        const UnramBase& U = *piece.U;
        UnramBase::Poly chi = U.charpoly_mod(pi.num, piece.h);
        UnramBase::Poly Ehat = U.pscale_down(chi, pi.pden);
        std::shared_ptr<LocalField> K;
        try {
            K = std::make_shared<LocalField>(piece.U, Ehat);
        } catch (const Error&) {
            // non-Eisenstein charpoly: the uniformizer candidate was bad,
            // typically from borderline precision
            throw PrecisionExhausted("ramified leaf: uniformizer charpoly not Eisenstein");
        }
        LocalField::Elt root = root_in_tower(piece, pi, K);
        apply_chain_and_emit(piece, K, root);
    }

    // express x in the pi-power basis of K = U[y]/(Ehat), pi = num / p^pden
    LocalField::Elt root_in_tower(const Piece& piece, const FracElt& pi,
                                  const std::shared_ptr<LocalField>& K) {
        const UnramBase& U = *piece.U;
        int e = U.pdeg(piece.h);
        std::vector<UnramBase::Poly> cols(e);
        UnramBase::Poly cur = U.pone();
        for (int j = 0; j < e; ++j) {
            int shift = (e - 1 - j) * pi.pden;  // common denominator p^((e-1) pden)
            UnramBase::Poly scaled = cur;
            for (auto& cc : scaled) cc = U.mul_p(cc, shift);
            cols[j] = scaled;
            if (j + 1 < e) cur = U.pdivmod(U.pmul(cur, pi.num), piece.h).second;
        }
        UnramBase::Poly rhs = U.pX();
        for (auto& cc : rhs) cc = U.mul_p(cc, (e - 1) * pi.pden);

        std::vector<std::vector<UnramBase::Elt>> M(e, std::vector<UnramBase::Elt>(e, U.zero()));
        std::vector<UnramBase::Elt> B(e, U.zero());
        for (int j = 0; j < e; ++j)
            for (int i = 0; i < e && i < static_cast<int>(cols[j].size()); ++i)
                M[i][j] = cols[j][i];
        for (int i = 0; i < e && i < static_cast<int>(rhs.size()); ++i) B[i] = rhs[i];
        std::vector<int> colperm(e);
        std::iota(colperm.begin(), colperm.end(), 0);
        for (int row = 0; row < e; ++row) {
            int bi = -1, bj = -1, bv = U.N();
            for (int i = row; i < e; ++i)
                for (int j = row; j < e; ++j) {
                    int v = U.val(M[i][j]);
                    if (v < bv) { bv = v; bi = i; bj = j; }
                }
            if (bi < 0 || bv >= U.N()) throw PrecisionExhausted("tower iso matrix singular");
            std::swap(M[row], M[bi]);
            std::swap(B[row], B[bi]);
            for (int i = 0; i < e; ++i) std::swap(M[i][row], M[i][bj]);
            std::swap(colperm[row], colperm[bj]);
            UnramBase::Elt unit = U.div_p(M[row][row], bv);
            UnramBase::Elt uinv = U.inv(unit);
            for (int j = row; j < e; ++j) M[row][j] = U.mul(M[row][j], uinv);
            B[row] = U.mul(B[row], uinv);
            for (int i = 0; i < e; ++i) {
                if (i == row) continue;
                if (U.val(M[i][row]) < bv)
                    throw PrecisionExhausted("tower iso elimination needs fractions");
                UnramBase::Elt fac = U.div_p(M[i][row], bv);
                for (int j = row; j < e; ++j)
                    M[i][j] = U.sub(M[i][j], U.mul(fac, M[row][j]));
                B[i] = U.sub(B[i], U.mul(fac, B[row]));
            }
        }
        LocalField::Elt root = K->zero();
        for (int row = 0; row < e; ++row) {
            int v = U.val(M[row][row]);
            root[colperm[row]] = U.div_p(B[row], v);
        }
        return root;
    }

    // solve D * z = p^k mod h with z integral; returns (z, k)
    FracElt invert_mod(const UnramBase& U, const UnramBase::Poly& D,
                       const UnramBase::Poly& h) const {
        int m = U.pdeg(h);
        std::vector<std::vector<UnramBase::Elt>> M(m, std::vector<UnramBase::Elt>(m, U.zero()));
        UnramBase::Poly cur = U.pdivmod(D, h).second;
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < m && i < static_cast<int>(cur.size()); ++i) M[i][j] = cur[i];
            if (j + 1 < m) {
                UnramBase::Poly nxt(cur.size() + 1, U.zero());
                for (size_t i2 = 0; i2 < cur.size(); ++i2) nxt[i2 + 1] = cur[i2];
                U.pnorm(nxt);
                cur = U.pdivmod(nxt, h).second;
            }
        }
        // Gauss-Jordan with valuation pivoting; RHS = e_0
        std::vector<UnramBase::Elt> B(m, U.zero());
        B[0] = U.one();
        std::vector<int> colperm(m);
        std::iota(colperm.begin(), colperm.end(), 0);
        std::vector<int> pivval(m, 0);
        for (int row = 0; row < m; ++row) {
            int bi = -1, bj = -1, bv = U.N();
            for (int i = row; i < m; ++i)
                for (int j = row; j < m; ++j) {
                    int v = U.val(M[i][j]);
                    if (v < bv) { bv = v; bi = i; bj = j; }
                }
            if (bi < 0 || bv >= U.N()) throw PrecisionExhausted("invert_mod: singular");
            std::swap(M[row], M[bi]);
            std::swap(B[row], B[bi]);
            for (int i = 0; i < m; ++i) std::swap(M[i][row], M[i][bj]);
            std::swap(colperm[row], colperm[bj]);
            pivval[row] = bv;
            UnramBase::Elt unit = U.div_p(M[row][row], bv);
            UnramBase::Elt uinv = U.inv(unit);
            for (int j = row; j < m; ++j) M[row][j] = U.mul(M[row][j], uinv);
            B[row] = U.mul(B[row], uinv);
            for (int i = 0; i < m; ++i) {
                if (i == row) continue;
                if (U.val(M[i][row]) < bv)
                    throw PrecisionExhausted("invert_mod: fraction elimination");
                UnramBase::Elt fac = U.div_p(M[i][row], bv);
                for (int j = row; j < m; ++j)
                    M[i][j] = U.sub(M[i][j], U.mul(fac, M[row][j]));
                B[i] = U.sub(B[i], U.mul(fac, B[row]));
            }
        }
        int k = *std::max_element(pivval.begin(), pivval.end());
        // diagonal system p^{piv} x = B; scale by p^k to stay integral:
        // z = p^k x solves D z = p^k
        UnramBase::Poly z(m, U.zero());
        for (int row = 0; row < m; ++row)
            z[colperm[row]] = U.mul_p(B[row], k - pivval[row]);
        U.pnorm(z);
        return FracElt{z, k};
    }

    // normalize a fraction: strip common p powers
    static FracElt fnorm(const UnramBase& U, FracElt x) {
        if (x.num.empty()) return x;
        int v = U.N();
        for (const auto& c : x.num) v = std::min(v, U.val(c));
        int strip = std::min(v, x.pden);
        if (strip > 0) {
            for (auto& c : x.num) c = U.div_p(c, strip);
            x.pden -= strip;
        }
        return x;
    }

    FracElt fmul(const UnramBase& U, const UnramBase::Poly& h, const FracElt& x,
                 const FracElt& y) const {
        FracElt r{U.pdivmod(U.pmul(x.num, y.num), h).second, x.pden + y.pden};
        return fnorm(U, r);
    }

    FracElt fpow(const UnramBase& U, const UnramBase::Poly& h, FracElt x, long e) const {
        if (e < 0) {
            FracElt inv = invert_mod(U, x.num, h);
            // (num/p^s)^{-1} = inv.num * p^s / p^{inv.k}
            FracElt xi{inv.num, inv.pden - x.pden};
            if (xi.pden < 0) {
                for (auto& c : xi.num) c = U.mul_p(c, -xi.pden);
                xi.pden = 0;
            }
            x = fnorm(U, xi);
            e = -e;
        }
        FracElt r{U.pone(), 0};
        while (e > 0) {
            if (e & 1) r = fmul(U, h, r, x);
            x = fmul(U, h, x, x);
            e >>= 1;
        }
        return r;
    }

    // ------------------------------------------------- charpoly refinement

    void refine(Piece piece, int a0, int b0, bool keep_first_only) {
        const UnramBase& U0 = *piece.U;
        int m = U0.pdeg(piece.h);
        struct Level {
            FracElt elt;
            long zval;  // valuation in 1/m units
        };
        std::vector<Level> levels;
        // x itself has value a0/b0 = a0 (m/b0) in 1/m units
        levels.push_back(Level{FracElt{U0.pX(), 0}, static_cast<long>(a0) * (m / b0)});
        FracElt xi{pow_mod(U0, U0.pX(), b0, piece.h), a0};
        long e_acc = b0;

        for (int depth = 0; depth < depth_cap; ++depth) {
            const UnramBase& U = *piece.U;
            UnramBase::Poly chi = U.charpoly_mod(xi.num, piece.h);
            UnramBase::Poly chix = U.pscale_down(chi, xi.pden);
            const ResidueField& R = U.res();
            auto chibar = U.residue_poly(chix);
            PF_TRACE("refine depth=" << depth << " pden=" << xi.pden << " chibar-deg=" << R.pdeg(chibar));
            if (R.pdeg(chibar) != m)
                throw PrecisionExhausted("refinement charpoly degenerate");
            auto rf = R.pfactor(chibar);
            if (rf.size() >= 2) {
                split_by_element(std::move(piece), xi, rf, keep_first_only);
                return;
            }
            auto [phibar, mult] = rf[0];
            int d0 = R.pdeg(phibar);
            if (d0 > 1) {
                // extend the base; chi then splits into d0 conjugate blocks
                Piece p2 = rebase(std::move(piece), d0);
                const UnramBase& U2 = *p2.U;
                FracElt xi2{U2.embed_poly_from(U, xi.num), xi.pden};
                UnramBase::Poly chi2 = U2.charpoly_mod(xi2.num, p2.h);
                UnramBase::Poly chix2 = U2.pscale_down(chi2, xi2.pden);
                auto rf2 = U2.res().pfactor(U2.residue_poly(chix2));
                if (rf2.size() < 2)
                    throw PrecisionExhausted("refinement base extension did not split");
                split_by_element(std::move(p2), xi2, rf2, true);
                return;
            }
            if (mult == 1) throw Error("refinement reached trivial piece");
            // single residue root: recentre
            ResidueField::Elt cbar = R.neg(phibar[0]);
            UnramBase::Elt chat = U.lift(cbar);
            FracElt zeta = xi;
            // zeta = xi - chat
            {
                UnramBase::Poly shift{U.mul_p(chat, zeta.pden)};
                zeta.num = U.psub(zeta.num, shift);
                zeta = fnorm(U, zeta);
            }
            // polygon of charpoly(zeta); a missing constant vertex means zeta
            // kills a block exactly, which the next residue split separates
            UnramBase::Poly chiz = U.charpoly_mod(zeta.num, piece.h);
            UnramBase::Poly chizx = U.pscale_down(chiz, zeta.pden);
            auto hull = U.newton_polygon(chizx);
            if (hull.size() < 2 || hull.back().first != m)
                throw PrecisionExhausted("refinement polygon degenerate");
            auto [i1, v1] = hull[hull.size() - 2];
            int da = v1, db = m - i1;
            int gg = std::gcd(da, db);
            int a = da / gg, b = db / gg;
            bool uniform = (hull.size() == 2 && hull.front().first == 0);
            PF_TRACE("refine polygon a=" << a << " b=" << b << " hull0=" << hull.front().first << " segs=" << hull.size()-1);
            if (uniform) {
                // all conjugates of zeta share valuation a/b: usable both as a
                // value-group generator and for the irreducibility certificate
                levels.push_back(Level{zeta, static_cast<long>(a) * (m / b)});
                if (b > 1) e_acc = std::lcm(e_acc, static_cast<long>(b));
                if (e_acc == m) {
                    emit_wild_leaf(piece, levels);
                    return;
                }
            }
            if (b == 1) {
                // xi <- zeta / p^a
                xi = zeta;
                xi.pden += a;
            } else {
                // xi <- zeta^b / p^a
                FracElt zb = fpow(U, piece.h, zeta, b);
                zb.pden += a;
                xi = fnorm(U, zb);
            }
        }
        throw PrecisionExhausted("refinement depth cap exceeded");
    }

    void split_by_element(Piece piece, const FracElt& xi,
                          const std::vector<std::pair<ResidueField::Poly, int>>& rf,
                          bool keep_first_only) {
        const UnramBase& U = *piece.U;
        const ResidueField& R = U.res();
        int m = U.pdeg(piece.h);
        ResidueField::Poly A1 = R.pone();
        for (int i = 0; i < rf[0].second; ++i) A1 = R.pmul(A1, rf[0].first);
        ResidueField::Poly A2 = R.pone();
        for (size_t k = 1; k < rf.size(); ++k)
            for (int i = 0; i < rf[k].second; ++i) A2 = R.pmul(A2, rf[k].first);
        // Bezout sigma*A1 + tau*A2 = 1 over the residue field
        ResidueField::Poly r0 = A1, r1 = A2;
        ResidueField::Poly s0 = R.pone(), s1 = R.pzero();
        while (!r1.empty()) {
            auto [q, r2] = R.pdivmod(r0, r1);
            auto s2 = R.psub(s0, R.pmul(q, s1));
            r0 = r1; r1 = r2;
            s0 = s1; s1 = s2;
        }
        if (R.pdeg(r0) != 0) throw Error("split_by_element: blocks not coprime");
        ResidueField::Poly sigma = R.pscale(s0, R.inv(r0[0]));
        ResidueField::Poly sA1 = R.pmul(sigma, A1);
        // evaluate sA1 at xi (fraction with common denominator p^(ds * pden))
        int ds = R.pdeg(sA1);
        FracElt e0;
        {
            std::vector<UnramBase::Poly> xpow;
            UnramBase::Poly cur = U.pone();
            for (int k = 0; k <= ds; ++k) {
                xpow.push_back(cur);
                if (k < ds) cur = U.pdivmod(U.pmul(cur, xi.num), piece.h).second;
            }
            UnramBase::Poly acc;
            for (int k = 0; k <= ds; ++k) {
                UnramBase::Elt ck = U.lift(sA1[static_cast<size_t>(k)]);
                UnramBase::Poly term = U.pscale(xpow[static_cast<size_t>(k)], ck);
                for (auto& cc : term) cc = U.mul_p(cc, (ds - k) * xi.pden);
                acc = U.padd(acc, term);
            }
            e0 = fnorm(U, FracElt{acc, ds * xi.pden});
        }
        // Newton iteration to an idempotent; the idempotent lives in the
        // maximal order, so fractional coordinates are expected
        FracElt e = e0;
        bool stable = false;
        for (int it = 0; it < 64; ++it) {
            FracElt e2 = fmul(U, piece.h, e, e);
            // e2 - e at common denominator, stability modulo a safety margin
            int cd = std::max(e2.pden, e.pden);
            UnramBase::Poly d1 = e2.num, d2 = e.num;
            for (auto& cc : d1) cc = U.mul_p(cc, cd - e2.pden);
            for (auto& cc : d2) cc = U.mul_p(cc, cd - e.pden);
            UnramBase::Poly diff = U.psub(d1, d2);
            bool zero = true;
            for (const auto& cc : diff)
                if (U.val(cc) < U.N() - cd - 2) zero = false;
            if (zero) { stable = true; break; }
            FracElt e3 = fmul(U, piece.h, e2, e);
            // 3 e^2 - 2 e^3
            int cd2 = std::max(e2.pden, e3.pden);
            UnramBase::Poly t1 = U.pscale(e2.num, U.from_int(3));
            UnramBase::Poly t2 = U.pscale(e3.num, U.from_int(2));
            for (auto& cc : t1) cc = U.mul_p(cc, cd2 - e2.pden);
            for (auto& cc : t2) cc = U.mul_p(cc, cd2 - e3.pden);
            e = fnorm(U, FracElt{U.psub(t1, t2), cd2});
        }
        if (!stable) throw PrecisionExhausted("idempotent iteration did not converge");
        PF_TRACE("idempotent stable, pden=" << e.pden);
        int r = R.pdeg(A2);
        FracElt exF = fmul(U, piece.h, e, FracElt{U.pX(), 0});
        UnramBase::Poly chiex_num = U.charpoly_mod(exF.num, piece.h);
        UnramBase::Poly chiex = U.pscale_down(chiex_num, exF.pden);
        PF_TRACE("chiex deg=" << U.pdeg(chiex) << " r=" << r << " m=" << m);
        if (std::getenv("PF_TRACE")) { for (int i = 0; i <= U.pdeg(chiex); ++i) std::cerr << "  chiex[" << i << "] val=" << (i < (int)chiex.size() ? U.val(chiex[i]) : -1) << std::endl; }
        for (int i = 0; i < m - r; ++i)
            if (i < static_cast<int>(chiex.size()) && !U.is_zero(chiex[static_cast<size_t>(i)]))
                throw PrecisionExhausted("idempotent charpoly has nonzero low coefficients");
        UnramBase::Poly h_right(chiex.begin() + (m - r), chiex.end());
        U.pnorm(h_right);
        if (U.pdeg(h_right) != r)
            throw PrecisionExhausted("idempotent split degree mismatch");
        auto [h_left, rem] = U.pdivmod(piece.h, h_right);
        // quantitative Hensel: defect valuation must exceed twice the
        // resultant valuation for the split to certify a true factorization
        int vr = piece.prec;
        for (const auto& cc : rem) vr = std::min(vr, U.val(cc));
        UnramBase::Elt res = U.resultant_monic(h_left, h_right);
        int rho = U.val(res);
        if (rho >= U.N()) throw PrecisionExhausted("idempotent split: resultant ~ 0");
        if (vr <= 2 * rho + 2) throw PrecisionExhausted("idempotent split: defect too small");
        int newprec = std::min(piece.prec, vr - rho) - 1;
        if (newprec < 8) throw PrecisionExhausted("idempotent split: precision too low");
        PF_TRACE("split ok: deg " << U.pdeg(h_left) << " + " << U.pdeg(h_right) << " rho=" << rho << " vr=" << vr);
        // h_left corresponds to the A1 block (where e = 0)
        process(Piece{piece.U, h_left, newprec, piece.chain}, false);
        if (!keep_first_only)
            process(Piece{piece.U, h_right, newprec, piece.chain}, false);
    }

    template <class Levels>
    void emit_wild_leaf(const Piece& piece, const Levels& levels) {
        const UnramBase& U = *piece.U;
        int m = U.pdeg(piece.h);
        // combine p (value m in 1/m units) with the level elements to reach
        // value 1: iterative extended gcd
        FracElt cur{UnramBase::Poly{U.from_int(p)}, 0};
        long curval = m;
        for (const auto& lvl : levels) {
            if (curval == 1) break;
            long v2 = lvl.zval;
            if (v2 <= 0) continue;
            long gcd2 = std::gcd(curval, v2);
            if (gcd2 == curval) continue;  // no improvement
            // n1*curval + n2*v2 = gcd2
            long r0 = curval, r1 = v2, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
            while (r1 != 0) {
                long q = r0 / r1;
                std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
                std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
                std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
            }
            FracElt part1 = fpow(U, piece.h, cur, s0);
            FracElt part2 = fpow(U, piece.h, lvl.elt, t0);
            cur = fmul(U, piece.h, part1, part2);
            curval = gcd2;
        }
        if (curval != 1) throw PrecisionExhausted("wild leaf: value group not generated");
        emit_ramified_leaf(piece, fnorm(U, cur));
    }
};

} // namespace

std::vector<CompletionWithRoot> factor_over_completion(const ZPoly& g, const Integer& p,
                                                       int target_precision,
                                                       const PadicFactorKnobs& knobs) {
    if (g.is_zero() || g.lc() != 1) throw Error("factor_over_completion: g must be monic");
    Integer disc = discriminant(g);
    if (disc == 0) throw Error("factor_over_completion: g not squarefree");
    long vdisc = valuation(disc, p);
    int N0 = knobs.initial_precision;
    if (N0 == 0) N0 = static_cast<int>(2 * vdisc) + 24;
    if (target_precision > N0) N0 = target_precision;
    for (int N = N0;; N *= 2) {
        if (N > knobs.max_precision)
            throw PrecisionExhausted("factor_over_completion: precision cap reached");
        try {
            Factorizer F{p, g, N, knobs.refine_depth_cap, {}, {}};
            F.run();
            std::stable_sort(F.out.begin(), F.out.end(),
                             [](const CompletionWithRoot& x, const CompletionWithRoot& y) {
                                 if (x.field->degree() != y.field->degree())
                                     return x.field->degree() < y.field->degree();
                                 return x.field->e() < y.field->e();
                             });
            return F.out;
        } catch (const PrecisionExhausted&) {
            continue;
        }
    }
}

} // namespace twocover
