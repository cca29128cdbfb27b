package com.demo.util;

public class Grid {
    private int[][] cells;

    public Grid(int rows, int cols) {
        cells = new int[rows][cols];
    }

    public void fill(int value) {
        for (int r = 0; r < cells.length; r++) {
            for (int c = 0; c < cells[r].length; c++) {
                cells[r][c] = value;
            }
        }
    }

    public int neighbors(int r, int c) {
        int n = 0;
        for (int dr = -1; dr <= 1; dr++) {
            for (int dc = -1; dc <= 1; dc++) {
                if (dr == 0 && dc == 0) {
                    continue;
                }
                int rr = r + dr;
                int cc = c + dc;
                if (rr < 0 || cc < 0 || rr >= cells.length || cc >= cells[rr].length) {
                    continue;
                }
                if (cells[rr][cc] != 0) {
                    n++;
                }
            }
        }
        return n;
    }

    public int get(int r, int c) {
        return cells[r][c];
    }

    public void set(int r, int c, int value) {
        cells[r][c] = value;
    }

    public static class Cursor {
        private int row;
        private int col;

        public int getRow() { return row; }

        public int getCol() { return col; }

        public void move(int dr, int dc) {
            row += dr;
            col += dc;
        }
    }
}
