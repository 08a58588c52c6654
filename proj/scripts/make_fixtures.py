"""Writes the molfile fixtures under data/ from SMILES with RDKit.

Each molecule is written twice: with aromatic bonds as bond type 4
(data/aromatic) and kekulized with alternating 1/2 bonds (data/kekule).
Every Kekule form of each drug is also written as an edge list under
data/kekule/resonance/<name>_<k>.mgf.
Hydrogens are implicit, so the files are hydrogen-suppressed.
"""

import pathlib

from rdkit import Chem
from rdkit.Chem import rdMolDescriptors

ROOT = pathlib.Path(__file__).resolve().parent.parent / "data"

AMINO_ACIDS = {
    "glycine": "NCC(=O)O",
    "alanine": "CC(N)C(=O)O",
    "serine": "OCC(N)C(=O)O",
    "cysteine": "SCC(N)C(=O)O",
    "valine": "CC(C)C(N)C(=O)O",
    "threonine": "CC(O)C(N)C(=O)O",
    "leucine": "CC(C)CC(N)C(=O)O",
    "isoleucine": "CCC(C)C(N)C(=O)O",
    "asparagine": "NC(=O)CC(N)C(=O)O",
    "aspartic_acid": "OC(=O)CC(N)C(=O)O",
    "glutamine": "NC(=O)CCC(N)C(=O)O",
    "glutamic_acid": "OC(=O)CCC(N)C(=O)O",
    "methionine": "CSCCC(N)C(=O)O",
    "lysine": "NCCCCC(N)C(=O)O",
    "arginine": "NC(=N)NCCCC(N)C(=O)O",
    "histidine": "OC(=O)C(N)Cc1cnc[nH]1",
    "phenylalanine": "OC(=O)C(N)Cc1ccccc1",
    "tyrosine": "OC(=O)C(N)Cc1ccc(O)cc1",
    "tryptophan": "OC(=O)C(N)Cc1c[nH]c2ccccc12",
    "proline": "OC(=O)C1CCCN1",
}

# Published heavy-atom formulas (PubChem) used as a cross-check.
DRUGS = {
    "benzoic_acid": ("OC(=O)c1ccccc1", "C7H6O2"),
    "sr1001": (
        "CC(=O)Nc1nc(C)c(S(=O)(=O)Nc2ccc(cc2)C(O)(C(F)(F)F)C(F)(F)F)s1",
        "C15H13F6N3O4S2",
    ),
    "quinoline_yellow": (
        "O=C1C(C(=O)c2ccccc12)c1ccc2ccccc2n1",
        "C18H11NO2",
    ),
    "dienogest": (
        "N#CC[C@]1(O)CC[C@H]2[C@@H]3CCC4=CC(=O)CCC4=C3CC[C@@]21C",
        "C20H25NO2",
    ),
    "pirenperone": (
        "Cc1nc2ccccn2c(=O)c1CCN1CCC(CC1)C(=O)c1ccc(F)cc1",
        "C23H24FN3O2",
    ),
    "ketoconazole": (
        "CC(=O)N1CCN(CC1)c1ccc(OCC2COC(Cn3ccnc3)(O2)c2ccc(Cl)cc2Cl)cc1",
        "C26H28Cl2N4O4",
    ),
    "cefpirome": (
        "CON=C(C(=O)NC1C2SCC(C[n+]3cccc4c3CCC4)=C(C(=O)[O-])N2C1=O)c1csc(N)n1",
        "C22H22N6O5S2",
    ),
}


def write(name, smiles, folder):
    mol = Chem.MolFromSmiles(smiles)
    if mol is None:
        raise SystemExit(f"bad SMILES for {name}")
    mol.SetProp("_Name", name)
    aromatic = Chem.MolToMolBlock(mol, kekulize=False)
    kek = Chem.Mol(mol)
    Chem.Kekulize(kek, clearAromaticFlags=True)
    kekule = Chem.MolToMolBlock(kek)
    for style, block in (("aromatic", aromatic), ("kekule", kekule)):
        out = ROOT / style / folder
        out.mkdir(parents=True, exist_ok=True)
        (out / f"{name}.mol").write_text(block)
    return mol


def perfect_matchings(edges, atoms):
    adj = {a: [] for a in atoms}
    for i, (a, b) in enumerate(edges):
        if a in adj and b in adj:
            adj[a].append((b, i))
            adj[b].append((a, i))
    found = []

    def extend(free, chosen):
        if not free:
            found.append(frozenset(chosen))
            return
        a = min(free)
        for b, i in adj[a]:
            if b in free:
                extend(free - {a, b}, chosen + [i])

    extend(frozenset(atoms), [])
    return found


def write_resonance_forms(name, smiles):
    mol = Chem.MolFromSmiles(smiles)
    arom = [b.GetIdx() for b in mol.GetBonds() if b.GetIsAromatic()]
    kek = Chem.Mol(mol)
    Chem.Kekulize(kek, clearAromaticFlags=True)
    doubled = set()
    for i in arom:
        b = kek.GetBondWithIdx(i)
        if b.GetBondType() == Chem.BondType.DOUBLE:
            doubled |= {b.GetBeginAtomIdx(), b.GetEndAtomIdx()}
    edges = [(mol.GetBondWithIdx(i).GetBeginAtomIdx(),
              mol.GetBondWithIdx(i).GetEndAtomIdx()) for i in arom]
    out = ROOT / "kekule" / "resonance"
    out.mkdir(parents=True, exist_ok=True)
    forms = perfect_matchings(edges, doubled)
    for k, chosen in enumerate(forms):
        lines = ["mgf 1", f"name {name}_{k}"]
        lines += [f"atom {a.GetIdx()} {a.GetSymbol()}" for a in mol.GetAtoms()]
        for b in mol.GetBonds():
            if b.GetIsAromatic():
                order = "2" if arom.index(b.GetIdx()) in chosen else "1"
            else:
                order = str(int(b.GetBondTypeAsDouble()))
            lines.append(f"bond {b.GetBeginAtomIdx()} {b.GetEndAtomIdx()} {order}")
        (out / f"{name}_{k}.mgf").write_text("\n".join(lines) + "\n")
    return len(forms)


def main():
    total = 0
    for name, smi in AMINO_ACIDS.items():
        total += write(name, smi, "amino_acids").GetNumBonds()
    print(f"amino acids: {total} heavy-atom bonds")
    for name, (smi, formula) in DRUGS.items():
        mol = write(name, smi, "drugs")
        got = rdMolDescriptors.CalcMolFormula(mol)
        flag = "ok" if got == formula else f"MISMATCH (expected {formula})"
        forms = write_resonance_forms(name, smi)
        print(f"{name}: {mol.GetNumBonds()} bonds, {got} {flag}, {forms} Kekule forms")


if __name__ == "__main__":
    main()
