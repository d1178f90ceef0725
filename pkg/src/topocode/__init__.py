"""Set-colorings, hypergraphs and Topcode-matrices of graphs."""
