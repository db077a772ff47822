"""Hand-built trees shared by several test modules."""

# Keys 9, 18, 24 and 25 are the ones named for the example; the remaining
# keys fill out a 16-key tree in which 25 is a red leaf.
RED_LEAF_25 = (18, "B",
        (9, "R",
         (2, "B", (1, "B", None, None), (5, "B", None, None)),
         (16, "B", (12, "R", (10, "B", None, None), (14, "B", None, None)), (17, "B", None, None))),
        (24, "B",
         (21, "R", (20, "B", None, None), (22, "B", None, None)),
         (45, "B", (25, "R", None, None), None)))
