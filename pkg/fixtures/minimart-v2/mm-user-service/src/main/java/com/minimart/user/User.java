package com.minimart.user;

import org.springframework.data.mongodb.core.mapping.Document;

@Document(collection = "users")
public class User {
    private String id;
    private String email;

    public String getId() { return id; }
    public String getEmail() { return email; }
}
