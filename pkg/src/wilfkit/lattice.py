"""Face lattice enumeration of a pointed cone up to an automorphism group.

Faces are identified by the saturated set of facets containing them, stored
as a bit mask (bit k = facet k of the cone's canonical facet list).  Masks
are ordered as integers; with facet 0 in the least significant bit this
order refines "larger maximal facet index means larger mask", which is what
the cosimplicial facet restriction needs.  Only one face per orbit of the
automorphism group is stored, always the mask-minimal one.

The per-round worklist is data parallel; results are identical for every
worker count because candidate production per face is deterministic and all
merging is set union keyed by canonical masks.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import cached_property

from .geometry import LinearSystem, dot, extreme_rays, integer_rank


class GroupDoesNotPreserveFacets(ValueError):
    pass


class CheckpointError(ValueError):
    pass


@dataclass(frozen=True)
class FaceDescriptor:
    facet_mask: int
    codim: int
    orbit_size: int
    cosimplicial: bool


@dataclass(frozen=True)
class Preparation:
    """Incidence data shared by every enumeration worker, immutable."""

    dim: int
    normals: tuple[tuple[int, ...], ...]
    rays: tuple[tuple[int, ...], ...]
    facet_rays: tuple[int, ...]         # per facet: bit mask over rays
    all_rays_mask: int
    cosimplicial_rays_mask: int
    facet_perms: tuple[tuple[int, ...], ...]
    perm_tables: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def facet_count(self) -> int:
        return len(self.normals)

    @property
    def ray_count(self) -> int:
        return len(self.rays)

    @property
    def group_order(self) -> int:
        return len(self.facet_perms)

    @property
    def trivial_group(self) -> bool:
        return len(self.facet_perms) <= 1


def _build_perm_table(perm: tuple[int, ...], nfacets: int):
    nbytes = (nfacets + 7) // 8
    tables = []
    for pos in range(nbytes):
        tbl = [0] * 256
        for v in range(1, 256):
            low = v & -v
            src = pos * 8 + low.bit_length() - 1
            img = (1 << perm[src]) if src < nfacets else 0
            tbl[v] = tbl[v ^ low] | img
        tables.append(tuple(tbl))
    return tuple(tables)


def _apply_perm_table(tables, mask: int) -> int:
    out = 0
    pos = 0
    while mask:
        b = mask & 255
        if b:
            out |= tables[pos][b]
        mask >>= 8
        pos += 1
    return out


def prepare(system: LinearSystem, coord_perms=None) -> Preparation:
    """Rays, facet incidence masks, and facet permutations for a cone.

    coord_perms: iterable of coordinate permutations (0-based tuples, image
    position per coordinate) forming the automorphism group, identity
    included.  Every permutation must map the facet normal set onto itself.
    """
    dim = system.dim
    normals = tuple(c.coeffs for c in system.constraints)
    rays = tuple(extreme_rays(system))
    facet_rays = []
    for n in normals:
        mask = 0
        for t, r in enumerate(rays):
            if dot(n, r) == 0:
                mask |= 1 << t
        facet_rays.append(mask)
    all_mask = (1 << len(rays)) - 1

    cosimp_rays = 0
    for t in range(len(rays)):
        tight = sum(1 for fm in facet_rays if fm >> t & 1)
        if tight == dim - 1:
            cosimp_rays |= 1 << t

    if coord_perms is None:
        coord_perms = [tuple(range(dim))]
    normal_index = {n: k for k, n in enumerate(normals)}
    facet_perms = []
    for perm in coord_perms:
        fp = []
        for n in normals:
            img = [0] * dim
            for k, v in enumerate(n):
                img[perm[k]] = v
            key = tuple(img)
            if key not in normal_index:
                raise GroupDoesNotPreserveFacets(
                    f"permutation {perm} does not preserve the facet set")
            fp.append(normal_index[key])
        facet_perms.append(tuple(fp))
    nfacets = len(normals)
    tables = tuple(_build_perm_table(fp, nfacets) for fp in facet_perms)
    return Preparation(dim, normals, rays, tuple(facet_rays), all_mask,
                       cosimp_rays, tuple(facet_perms), tables)


def face_facets(ray_mask: int, prep: Preparation) -> int:
    """Saturated facet mask of the face with the given extreme ray set."""
    out = 0
    for h, fm in enumerate(prep.facet_rays):
        if ray_mask & fm == ray_mask:
            out |= 1 << h
    return out


def face_rays(facet_mask: int, prep: Preparation) -> int:
    """Extreme ray mask of the face contained in exactly these facets."""
    e = prep.all_rays_mask
    probe = facet_mask
    while probe:
        low = probe & -probe
        e &= prep.facet_rays[low.bit_length() - 1]
        probe ^= low
    return e


def orbit_min(facet_mask: int, prep: Preparation) -> int:
    """Mask-minimal image of the face under the group; idempotent."""
    if prep.trivial_group:
        return facet_mask
    best = facet_mask
    for tables in prep.perm_tables:
        img = _apply_perm_table(tables, facet_mask)
        if img < best:
            best = img
    return best


def expand_orbit(facet_mask: int, prep: Preparation) -> list[int]:
    """All distinct images of the face under the group, sorted."""
    if prep.trivial_group:
        return [facet_mask]
    return sorted({_apply_perm_table(t, facet_mask) for t in prep.perm_tables})


def _face_codim(prep: Preparation, hmask: int, e_mask: int,
                parent_codim: int, restricted: bool) -> tuple[int, bool]:
    """Codimension and cosimpliciality of a freshly produced face."""
    dim = prep.dim
    if e_mask == 0:
        return dim, hmask.bit_count() == dim
    size = hmask.bit_count()
    if not restricted:
        # full candidate loop: maximal intersections are true facets
        codim = parent_codim + 1
        return codim, size == codim
    if size == parent_codim + 1:
        # codim is squeezed between parent_codim+1 and the facet count
        return size, True
    if e_mask & prep.cosimplicial_rays_mask:
        # contains a cosimplicial extreme ray, hence is cosimplicial
        return size, True
    rows = []
    probe = hmask
    while probe:
        low = probe & -probe
        rows.append(prep.normals[low.bit_length() - 1])
        probe ^= low
    codim = integer_rank(rows, dim)
    return codim, size == codim


@dataclass
class OrbitLattice:
    """Orbit-minimal face descriptors of a cone, keyed by facet mask."""

    dim: int
    facet_count: int
    group_order: int
    label: int
    faces: dict[int, FaceDescriptor]
    rounds: int
    frontier: tuple[int, ...] = ()

    @property
    def complete(self) -> bool:
        return not self.frontier

    @property
    def orbit_count(self) -> int:
        return len(self.faces)

    @cached_property
    def face_count(self) -> int:
        return sum(d.orbit_size for d in self.faces.values())

    @property
    def cosimplicial_orbit_count(self) -> int:
        return sum(1 for d in self.faces.values() if d.cosimplicial)

    def by_codim(self) -> dict[int, list[FaceDescriptor]]:
        out: dict[int, list[FaceDescriptor]] = {}
        for mask in sorted(self.faces):
            d = self.faces[mask]
            out.setdefault(d.codim, []).append(d)
        return out

    def sorted_descriptors(self) -> list[FaceDescriptor]:
        return [self.faces[m] for m in
                sorted(self.faces, key=lambda m: (self.faces[m].codim, m))]


# worker state, installed before forking so children inherit it
_WORK: dict = {}


def _process_item(item):
    """Candidate face records produced from one worklist face.

    Returns (gmin, codim, orbit_size, cosimplicial) tuples for candidates not
    already known at round start (or produced earlier by this worker).
    """
    fmask, parent_codim, cosimp = item
    prep: Preparation = _WORK["prep"]
    seen = _WORK["seen"]
    restriction = _WORK["restriction"]
    facet_rays = prep.facet_rays
    nfacets = prep.facet_count

    e_f = face_rays(fmask, prep)
    restricted = restriction and cosimp and fmask != 0
    start = fmask.bit_length() if restricted else 0
    cands: dict[int, None] = {}
    for h in range(start, nfacets):
        if fmask >> h & 1:
            continue
        e_g = e_f & facet_rays[h]
        if e_g not in cands:
            cands[e_g] = None

    # maximal candidates under inclusion of ray sets
    ordered = sorted(cands, key=lambda e: -e.bit_count())
    maximal: list[int] = []
    for e in ordered:
        if not any(e & kept == e for kept in maximal):
            maximal.append(e)

    out = []
    for e_g in maximal:
        hmask = fmask
        for h in range(nfacets):
            if not hmask >> h & 1 and e_g & facet_rays[h] == e_g:
                hmask |= 1 << h
        gmin = orbit_min(hmask, prep)
        if gmin in seen:
            continue
        images = expand_orbit(gmin, prep)
        seen.update(images)
        # codim, cosimpliciality, and the cosimplicial-ray test are all
        # equivariant, so the produced face's ray set stands in for its
        # orbit representative's
        codim, is_cosimp = _face_codim(prep, gmin, e_g, parent_codim,
                                       restricted)
        out.append((gmin, codim, len(images), is_cosimp))
    return out


def _process_chunk(items):
    return [_process_item(it) for it in items]


def enumerate_orbits(prep: Preparation, *, workers: int = 1,
                     facet_restriction: bool = True, label: int = 0,
                     checkpoint_path=None, resume: OrbitLattice | None = None,
                     progress=None) -> OrbitLattice:
    """Worklist enumeration of all face orbits, including the cone and apex.

    Round by round, every face of every worklist face is computed as a
    maximal intersection with a non-containing facet, canonicalized to its
    orbit minimum, and deduplicated against everything already known.  With
    facet_restriction on, cosimplicial faces only try facets beyond their
    largest one, which may surface deeper faces early; the global
    deduplication keeps that sound.
    """
    if resume is not None:
        if (resume.dim, resume.facet_count, resume.group_order) != \
                (prep.dim, prep.facet_count, prep.group_order):
            raise CheckpointError("checkpoint does not match this cone/group")
        faces = dict(resume.faces)
        seen: set[int] = set()
        for mask in faces:
            seen.update(expand_orbit(mask, prep))
        worklist = sorted(resume.frontier)
        round_no = resume.rounds
        label = resume.label
    else:
        root = FaceDescriptor(0, 0, 1, True)
        faces = {0: root}
        seen = {0}
        worklist = [0]
        round_no = 0

    if workers > 1:
        import multiprocessing as mp
        ctx = mp.get_context("fork")
    while worklist:
        round_no += 1
        items = [(m, faces[m].codim, faces[m].cosimplicial) for m in worklist]
        _WORK.clear()
        _WORK.update(prep=prep, seen=seen, restriction=facet_restriction)
        if workers > 1 and len(items) > 64:
            nchunks = workers * 4
            size = (len(items) + nchunks - 1) // nchunks
            chunks = [items[i:i + size] for i in range(0, len(items), size)]
            with ctx.Pool(workers) as pool:
                chunk_results = pool.map(_process_chunk, chunks)
            results = [recs for chunk in chunk_results for recs in chunk]
        else:
            results = [_process_item(it) for it in items]
        fresh: dict[int, FaceDescriptor] = {}
        for recs in results:
            for gmin, codim, osize, cosimp in recs:
                if gmin in faces or gmin in fresh:
                    continue
                fresh[gmin] = FaceDescriptor(gmin, codim, osize, cosimp)
                seen.update(expand_orbit(gmin, prep))
        faces.update(fresh)
        worklist = sorted(fresh)
        if progress is not None:
            progress(round_no, len(fresh), len(faces))
        if checkpoint_path is not None:
            snapshot = OrbitLattice(prep.dim, prep.facet_count,
                                    prep.group_order, label, faces, round_no,
                                    tuple(worklist))
            save_checkpoint(snapshot, checkpoint_path)
    _WORK.clear()
    return OrbitLattice(prep.dim, prep.facet_count, prep.group_order, label,
                        faces, round_no, ())


# ---------------------------------------------------------------------------
# checkpoint file format
#
# header:  magic "WKFL" | version u16 | label u16 | dim u16 | facet_count u16
#          group_order u16 | rounds u16 | record_count u64   (little endian)
# records, sorted by (codim, mask): codim u16 | orbit_size u32 | flags u8
#          (bit 0 cosimplicial, bit 1 frontier) | mask, ceil(facets/8) bytes,
#          little endian

_MAGIC = b"WKFL"
_HEADER = struct.Struct("<4sHHHHHHQ")
_RECORD = struct.Struct("<HIB")
_VERSION = 1


def save_checkpoint(lattice: OrbitLattice, path) -> None:
    nbytes = (lattice.facet_count + 7) // 8
    frontier = set(lattice.frontier)
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(_MAGIC, _VERSION, lattice.label, lattice.dim,
                              lattice.facet_count, lattice.group_order,
                              lattice.rounds, len(lattice.faces)))
        for mask in sorted(lattice.faces,
                           key=lambda m: (lattice.faces[m].codim, m)):
            d = lattice.faces[mask]
            flags = (1 if d.cosimplicial else 0) | (2 if mask in frontier else 0)
            fh.write(_RECORD.pack(d.codim, d.orbit_size, flags))
            fh.write(mask.to_bytes(nbytes, "little"))


def load_checkpoint(path) -> OrbitLattice:
    with open(path, "rb") as fh:
        head = fh.read(_HEADER.size)
        if len(head) != _HEADER.size:
            raise CheckpointError("truncated header")
        magic, version, label, dim, nfacets, group_order, rounds, count = \
            _HEADER.unpack(head)
        if magic != _MAGIC or version != _VERSION:
            raise CheckpointError("not a wilfkit checkpoint")
        nbytes = (nfacets + 7) // 8
        faces = {}
        frontier = []
        for _ in range(count):
            rec = fh.read(_RECORD.size)
            raw = fh.read(nbytes)
            if len(rec) != _RECORD.size or len(raw) != nbytes:
                raise CheckpointError("truncated record")
            codim, osize, flags = _RECORD.unpack(rec)
            mask = int.from_bytes(raw, "little")
            faces[mask] = FaceDescriptor(mask, codim, osize, bool(flags & 1))
            if flags & 2:
                frontier.append(mask)
    return OrbitLattice(dim, nfacets, group_order, label, faces, rounds,
                        tuple(frontier))
