"""Check a stored certificate against the group its spec names."""
from __future__ import annotations

from pathlib import Path

from algebra.errors import InvalidCertificate
from particover_utils import load_certificate
from search.certificates import PartitionCertificate, cover_problem, partition_problem

from .spec import build_group, format_spec, parse_spec


def cmd_verify(text: str, cert_path: Path) -> bool:
    """True when the file holds a partition, or failing that a cover, of the group."""
    spec = parse_spec(text)
    G = build_group(spec)
    print(f"\n=== Verify {format_spec(spec)} (order {G.order}) ===")
    try:
        cert = PartitionCertificate.from_id_lists(G, load_certificate(cert_path))
    except InvalidCertificate as e:
        print(f"  FAIL: {e}")
        return False

    print(f"  {cert.size} members, digest {cert.digest()}")
    if Path(cert_path).stem != cert.digest():
        print(f"  Warning: file name {Path(cert_path).name} does not match the digest")

    problem = partition_problem(G, cert)
    if problem is None:
        print(f"  PASS: partition with {cert.size} members")
        return True
    if cover_problem(G, cert) is None:
        print(f"  PASS: cover with {cert.size} members (not a partition: {problem})")
        return True
    print(f"  FAIL: {cover_problem(G, cert)}")
    return False
