"""Published automata tables for the correctors of orders 3, 4 and 5.

Every table is kept verbatim in the dump layout ``state output d0 d1 ...``.
State 0 is initial; digits are read most significant first. The order-4 and
order-5 tables disagree with their digit recurrences at larger inputs, see
:func:`almost_golomb.automata.audit_dfao`.
"""

R3_EPS_LABELS = ("q0", "q1", "q2", "c=", "c<", "c>", "e=", "e<", "e>", "r")

R3_EPS = """
0 0 9 1 2
1 0 9 9 3
2 0 6 9 9
3 1 4 3 5
4 0 4 4 4
5 1 5 5 5
6 0 7 6 8
7 1 7 7 7
8 0 8 8 8
9 0 9 9 9
"""

R4_EPS0 = """
0 0 0 1 2 2
1 0 3 4 14 18
2 0 18 18 18 18
3 0 22 6 25 5
4 0 15 22 6 25
5 0 16 23 7 26
6 0 16 23 7 27
7 0 17 24 8 28
8 0 29 29 13 29
9 0 12 28 10 12
10 0 13 29 13 13
11 0 28 10 12 28
12 0 29 13 13 29
13 0 0 0 0 0
14 1 5 15 19 19
15 1 7 16 20 20
16 1 8 17 21 21
17 1 13 29 29 29
18 1 19 19 19 19
19 1 20 20 20 20
20 1 21 21 21 21
21 1 29 29 29 29
22 1 23 7 26 7
23 1 24 8 28 8
24 1 29 13 29 13
25 1 9 11 26 7
26 1 10 12 28 8
27 1 10 12 28 10
28 1 13 13 29 13
29 1 0 0 0 0
"""

R4_EPS1 = """
0 0 0 6 1 1
1 0 2 2 2 2
2 0 3 3 3 3
3 0 4 4 4 4
4 0 5 5 5 5
5 0 21 21 21 21
6 0 9 22 15 2
7 0 20 28 8 20
8 0 21 29 21 21
9 0 10 25 12 23
10 0 11 26 13 24
11 0 14 28 14 28
12 0 19 27 13 24
13 0 20 28 14 28
14 0 21 29 21 29
15 0 23 16 3 3
16 0 24 17 4 4
17 0 28 18 5 5
18 0 29 21 21 21
19 0 28 8 20 28
20 0 29 21 21 29
21 0 0 0 0 0
22 1 16 10 25 12
23 1 17 11 26 13
24 1 18 14 28 14
25 1 17 11 26 7
26 1 18 14 28 8
27 1 8 20 28 8
28 1 21 21 29 21
29 1 0 0 0 0
"""

R4_EPS2 = """
0 0 0 1 2 2
1 0 3 12 17 20
2 0 20 20 20 20
3 0 4 14 7 13
4 0 5 15 8 15
5 0 6 16 10 16
6 0 11 28 11 28
7 0 24 26 8 15
8 0 25 27 10 16
9 0 25 27 10 25
10 0 28 28 11 28
11 0 0 0 0 0
12 1 18 4 14 7
13 1 19 5 15 8
14 1 19 5 15 9
15 1 23 6 16 10
16 1 28 11 28 11
17 1 13 18 21 21
18 1 15 19 22 22
19 1 16 23 23 23
20 1 21 21 21 21
21 1 22 22 22 22
22 1 23 23 23 23
23 1 28 28 28 28
24 1 27 10 25 27
25 1 28 11 28 28
26 1 10 25 27 10
27 1 11 28 28 11
28 1 0 0 0 0
"""

R4_EPS3 = """
0 0 0 5 1 1
1 0 2 2 2 2
2 0 3 3 3 3
3 0 4 4 4 4
4 0 9 9 9 9
5 0 10 11 6 2
6 0 12 7 3 3
7 0 13 8 4 4
8 0 16 9 9 9
9 0 19 19 19 19
10 0 20 14 22 12
11 0 7 20 14 22
12 0 8 21 15 23
13 0 9 24 16 24
14 0 8 21 15 25
15 0 9 24 16 26
16 0 19 29 19 29
17 0 26 28 18 26
18 0 29 29 19 29
19 0 0 0 0 0
20 1 21 15 23 13
21 1 24 16 24 16
22 1 27 17 23 13
23 1 28 18 24 16
24 1 29 19 29 19
25 1 28 18 26 28
26 1 29 19 29 29
27 1 18 26 28 18
28 1 19 29 29 19
29 1 0 0 0 0
"""

R5_U = """
0 (0,0) 0 1 5 10 18
1 (0,0) 6 2 2 2 2
2 (0,0) 3 3 3 3 3
3 (0,0) 4 4 4 4 4
4 (0,0) 9 9 9 9 9
5 (0,0) 2 2 14 19 11
6 (0,0) 20 7 3 3 3
7 (0,0) 21 8 4 4 4
8 (0,0) 22 9 9 9 9
9 (0,0) 0 0 0 0 0
10 (0,1) 19 11 19 11 19
11 (0,1) 20 12 20 12 20
12 (0,1) 21 13 21 13 21
13 (0,1) 22 17 22 17 22
14 (0,1) 3 15 20 12 20
15 (0,1) 4 16 21 13 21
16 (0,1) 9 17 22 17 22
17 (0,1) 0 0 0 0 0
18 (1,0) 11 19 11 19 11
19 (1,0) 12 20 12 20 12
20 (1,0) 13 21 13 21 13
21 (1,0) 17 22 17 22 17
22 (1,0) 0 0 0 0 0
"""

# name -> (base, table text, state labels)
PUBLISHED = {
    "r3-eps": (3, R3_EPS, R3_EPS_LABELS),
    "r4-eps0": (4, R4_EPS0, None),
    "r4-eps1": (4, R4_EPS1, None),
    "r4-eps2": (4, R4_EPS2, None),
    "r4-eps3": (4, R4_EPS3, None),
    "r5-U": (5, R5_U, None),
}

STATE_COUNTS = {
    "r3-eps": 10,
    "r4-eps0": 30,
    "r4-eps1": 30,
    "r4-eps2": 29,
    "r4-eps3": 30,
    "r5-U": 23,
}
