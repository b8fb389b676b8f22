# Tables for the E-series rational double points, transcribed entry by
# entry. `xi` entries give the 2l x 2l matrix directly; `pairs` give (phi, psi)
# with phi*psi = psi*phi = -g*I. Labels keep their published spelling and print order.
# Locked by data/golden/E*.txt.

E_SERIES = {
    "E6": {
        "g": "Y^3 + Z^4",
        "labels": ["1+", "1-", "2+", "2-", "3", "2"],
        "xi": {
            "1+": [
                ["i*Z^2", "-Y^2"],
                ["Y", "-i*Z^2"],
            ],
            "1-": [
                ["-i*Z^2", "-Y^2"],
                ["Y", "i*Z^2"],
            ],
            "2+": [
                ["i*Z^2", "0", "-Y^2", "0"],
                ["0", "i*Z^2", "Y*Z", "-Y^2"],
                ["Y", "0", "-i*Z^2", "0"],
                ["Z", "Y", "0", "-i*Z^2"],
            ],
            "2-": [
                ["-i*Z^2", "0", "-Y^2", "0"],
                ["0", "-i*Z^2", "Y*Z", "-Y^2"],
                ["Y", "0", "i*Z^2", "0"],
                ["Z", "Y", "0", "i*Z^2"],
            ],
        },
        "pairs": {
            "3": (
                [
                    ["-Y^2", "-Z^3", "-Y*Z^2"],
                    ["Y*Z", "-Y^2", "Z^3"],
                    ["Z^2", "-Y*Z", "-Y^2"],
                ],
                [
                    ["Y", "0", "-Z^2"],
                    ["Z", "Y", "0"],
                    ["0", "-Z", "Y"],
                ],
            ),
            "2": (
                [
                    ["Y^2", "-Z^3"],
                    ["-Z", "-Y"],
                ],
                [
                    ["-Y", "Z^3"],
                    ["Z", "Y^2"],
                ],
            ),
        },
    },
    "E7": {
        "g": "Y^3 + Y*Z^3",
        "labels": ["2'", "3'", "4", "3", "2", "1", "2''"],
        "xi": {},
        "pairs": {
            "2'": (
                [
                    ["Y^2", "-Y*Z^2"],
                    ["-Z", "-Y"],
                ],
                [
                    ["-Y", "Y*Z^2"],
                    ["Z", "Y^2"],
                ],
            ),
            "3'": (
                [
                    ["Y^2", "-Y*Z^2", "Y^2*Z"],
                    ["-Y*Z", "-Y^2", "-Y*Z^2"],
                    ["-Z^2", "-Y*Z", "Y^2"],
                ],
                [
                    ["-Y", "0", "Y*Z"],
                    ["Z", "Y", "0"],
                    ["0", "Z", "-Y"],
                ],
            ),
            "4": (
                [
                    ["0", "0", "Y^2", "-Y*Z^2"],
                    ["0", "0", "-Y*Z", "-Y^2"],
                    ["Y", "-Z^2", "0", "Y*Z"],
                    ["-Z", "-Y", "-Y", "0"],
                ],
                [
                    ["0", "-Y*Z", "-Y^2", "Y*Z^2"],
                    ["Y", "0", "Y*Z", "Y^2"],
                    ["-Y", "Z^2", "0", "0"],
                    ["Z", "Y", "0", "0"],
                ],
            ),
            "3": (
                [
                    ["-Y*Z", "-Y^2", "-Y*Z^2"],
                    ["Z^2", "Y*Z", "-Y^2"],
                    ["-Y", "Z^2", "-Y*Z"],
                ],
                [
                    ["0", "-Y*Z", "Y^2"],
                    ["Y", "0", "-Y*Z"],
                    ["Z", "Y", "0"],
                ],
            ),
            "2": (
                [
                    ["-Y*Z", "Y^2"],
                    ["-Y", "-Z^2"],
                ],
                [
                    ["Z^2", "Y^2"],
                    ["-Y", "Y*Z"],
                ],
            ),
            "1": (
                [["-Y^2 - Z^3"]],
                [["Y"]],
            ),
            "2''": (
                [
                    ["Y^2", "-Y*Z^2"],
                    ["-Y*Z", "-Y^2"],
                ],
                [
                    ["-Y", "Z^2"],
                    ["Z", "Y"],
                ],
            ),
        },
    },
    "E8": {
        "g": "Y^3 + Z^5",
        "labels": ["2'", "4'", "6", "5", "4", "3", "2", "3''"],
        "xi": {},
        "pairs": {
            "2'": (
                [
                    ["-Z^3", "Y^2"],
                    ["-Y", "-Z^2"],
                ],
                [
                    ["Z^2", "Y^2"],
                    ["-Y", "Z^3"],
                ],
            ),
            "4'": (
                [
                    ["0", "-Z^3", "Y^2", "0"],
                    ["-Z^2", "0", "-Y*Z", "-Y^2"],
                    ["Y", "Z^2", "0", "-Z^3"],
                    ["0", "-Y", "-Z^2", "0"],
                ],
                [
                    ["0", "Z^3", "-Y^2", "-Y*Z^2"],
                    ["Z^2", "0", "0", "Y^2"],
                    ["-Y", "0", "0", "Z^3"],
                    ["Z", "Y", "Z^2", "0"],
                ],
            ),
            "6": (
                [
                    ["0", "0", "0", "-Y^2", "-Y*Z^2", "-Z^4"],
                    ["0", "0", "0", "-Z^3", "Y^2", "Y*Z^2"],
                    ["0", "0", "0", "-Y*Z", "-Z^3", "Y^2"],
                    ["-Y", "-Z^2", "0", "0", "0", "-Z^3"],
                    ["0", "Y", "-Z^2", "Z^2", "0", "0"],
                    ["-Z", "0", "Y", "0", "Z^2", "0"],
                ],
                [
                    ["0", "0", "Z^3", "Y^2", "Y*Z^2", "Z^4"],
                    ["-Z^2", "0", "0", "Z^3", "-Y^2", "-Y*Z^2"],
                    ["0", "Z^2", "0", "Y*Z", "Z^3", "-Y^2"],
                    ["Y", "Z^2", "0", "0", "0", "0"],
                    ["0", "-Y", "Z^2", "0", "0", "0"],
                    ["Z", "0", "-Y", "0", "0", "0"],
                ],
            ),
            "5": (
                [
                    ["Z^3", "Y^2", "0", "0", "0"],
                    ["0", "-Z^3", "-Y^2", "Y*Z^2", "Z^4"],
                    ["0", "-Y*Z", "Z^3", "Y^2", "Y*Z^2"],
                    ["-Z^2", "0", "-Y*Z", "Z^3", "-Y^2"],
                    ["Y", "-Z^2", "0", "0", "0"],
                ],
                [
                    ["-Z^2", "0", "0", "0", "-Y^2"],
                    ["-Y", "0", "0", "0", "Z^3"],
                    ["0", "Y", "-Z^2", "0", "0"],
                    ["-Z", "0", "-Y", "-Z^2", "0"],
                    ["0", "-Z", "0", "Y", "Z^2"],
                ],
            ),
            "4": (
                [
                    ["Z^3", "-Y^2", "0", "0"],
                    ["0", "-Y*Z", "Z^3", "Y^2"],
                    ["Y", "Z^2", "0", "0"],
                    ["-Z", "0", "Y", "-Z^2"],
                ],
                [
                    ["-Z^2", "0", "-Y^2", "0"],
                    ["Y", "0", "-Z^3", "0"],
                    ["0", "-Z^2", "-Y*Z", "-Y^2"],
                    ["Z", "-Y", "0", "Z^3"],
                ],
            ),
            "3": (
                [
                    ["-Y^2", "-Z^4", "-Y*Z^3"],
                    ["-Y*Z", "Y^2", "-Z^4"],
                    ["-Z^2", "Y*Z", "Y^2"],
                ],
                [
                    ["Y", "0", "Z^3"],
                    ["Z", "-Y", "0"],
                    ["0", "Z", "-Y"],
                ],
            ),
            "2": (
                [
                    ["Y^2", "-Z^4"],
                    ["-Z", "-Y"],
                ],
                [
                    ["-Y", "Z^4"],
                    ["Z", "Y^2"],
                ],
            ),
            "3''": (
                [
                    ["-Y^2", "-Y*Z^2", "-Z^4"],
                    ["-Z^3", "Y^2", "Y*Z^2"],
                    ["-Y*Z", "-Z^3", "Y^2"],
                ],
                [
                    ["Y", "Z^2", "0"],
                    ["0", "-Y", "Z^2"],
                    ["Z", "0", "-Y"],
                ],
            ),
        },
    },
}
