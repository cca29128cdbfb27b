package com.demo.model;

public class Badge {
    private String title;
    private int rank;

    public String getTitle() { return title; }

    public void setTitle(String title) { this.title = title; }

    public int getRank() { return rank; }

    public void setRank(int rank) { this.rank = rank; }
}
